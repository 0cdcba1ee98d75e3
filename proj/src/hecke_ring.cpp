#include "eislab/modsym.hpp"

namespace eislab {

std::uint64_t sturm_bound(const SquareFreeLevel& level) {
  const BigInt psi = level.psi();
  BigInt b;
  mpz_cdiv_q_ui(b.get_mpz_t(), psi.get_mpz_t(), 6);
  return static_cast<std::uint64_t>(to_int64(b));
}

HeckeRingModel hecke_ring(std::shared_ptr<const ManinSymbolSpace> space) {
  HeckeRingModel model;
  model.sturm_bound = sturm_bound(space->level());
  model.genus = space->genus();
  model.ops = std::make_shared<const HeckeOperators>(space);
  const std::size_t r = space->cuspidal_rank();
  if (r == 0) return model;

  std::vector<std::vector<BigInt>> rows;
  for (std::uint64_t n = 1; n <= model.sturm_bound; ++n) {
    model.generators.push_back(model.ops->hecke(n));
    rows.push_back(model.generators.back().flatten());
  }
  model.basis = hermite_normal_form(IntMatrix::from_rows(rows, r * r));
  if (model.basis.rows() != static_cast<std::size_t>(model.genus))
    throw InvariantBreach("Hecke ring of level " + std::to_string(space->level().value()) +
                          " has rank " + std::to_string(model.basis.rows()) +
                          " instead of the genus " + std::to_string(model.genus));
  return model;
}

HeckeRingModel hecke_ring(const SquareFreeLevel& level, std::uint64_t desk_bound) {
  return hecke_ring(
      std::make_shared<const ManinSymbolSpace>(ManinSymbolSpace::build(level, desk_bound)));
}

std::optional<std::vector<BigInt>> HeckeRingModel::coordinates(const IntMatrix& op) const {
  if (zero_ring()) return std::vector<BigInt>{};
  const std::size_t r = ops->space().cuspidal_rank();
  if (op.rows() != r || op.cols() != r) throw InvalidInput("operator has the wrong size");
  return lattice_coordinates(basis, op.flatten());
}

IntMatrix HeckeRingModel::element(std::span<const BigInt> coords) const {
  const std::size_t r = ops->space().cuspidal_rank();
  if (coords.size() != basis.rows()) throw InvalidInput("coordinate vector has the wrong size");
  IntMatrix out(r, r);
  if (r == 0) return out;
  const std::vector<BigInt> flat = coords * basis;
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) out(i, j) = flat[i * r + j];
  return out;
}

}  // namespace eislab
