// SPDX-License-Identifier: Apache-2.0
#include "rodeo/hamiltonians.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>
#include <unordered_map>

#include "rodeo/error.hpp"
#include "rodeo/quadrature.hpp"

namespace rodeo {

Boundary HamiltonianSpec::resolved_boundary() const {
  if (boundary) return *boundary;
  return model == SpinModel::xx ? Boundary::open : Boundary::periodic;
}

Sector HamiltonianSpec::resolved_sector() const {
  if (sector != Sector::automatic) return sector;
  return model == SpinModel::xx ? Sector::zero_magnetization : Sector::even_parity;
}

void HamiltonianSpec::validate() const {
  if (length < 1) throw DomainError("chain length must be positive");
  if (length > kMaxChainLength)
    throw LimitError("chain length " + std::to_string(length) + " exceeds the dense limit of " +
                     std::to_string(kMaxChainLength));
  if (!std::isfinite(coupling) || !std::isfinite(field))
    throw DomainError("coupling and field must be finite");
  const Sector s = resolved_sector();
  if (s == Sector::zero_magnetization) {
    if (model != SpinModel::xx) throw DomainError("zero-magnetization sector requires the XX model");
    if (length % 2 != 0) throw DomainError("zero-magnetization sector requires even L");
  }
  if ((s == Sector::even_parity || s == Sector::odd_parity) && model != SpinModel::tfim)
    throw DomainError("parity sectors require the TFIM model");
  if (length == 1 && resolved_boundary() == Boundary::periodic && model == SpinModel::xx)
    throw DomainError("periodic XX chain needs at least two sites");
}

namespace {

using Bits = std::uint32_t;

Bits site_bit(int length, int site) { return Bits{1} << (length - 1 - site); }

std::vector<std::pair<int, int>> bonds(int length, Boundary b) {
  std::vector<std::pair<int, int>> out;
  for (int i = 0; i + 1 < length; ++i) out.emplace_back(i, i + 1);
  if (b == Boundary::periodic && length > 2) out.emplace_back(length - 1, 0);
  return out;
}

std::vector<Bits> fixed_count_basis(int length, int ones) {
  std::vector<Bits> out;
  for (Bits b = 0; b < (Bits{1} << length); ++b)
    if (std::popcount(b) == ones) out.push_back(b);
  return out;
}

// XX hopping within any basis closed under exchange of neighbouring spins.
Eigen::MatrixXd xx_matrix(int length, double j, Boundary boundary, const std::vector<Bits>& basis) {
  std::unordered_map<Bits, Eigen::Index> index;
  for (std::size_t i = 0; i < basis.size(); ++i) index.emplace(basis[i], static_cast<Eigen::Index>(i));
  const auto n = static_cast<Eigen::Index>(basis.size());
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(n, n);
  const auto bl = bonds(length, boundary);
  for (Eigen::Index col = 0; col < n; ++col) {
    const Bits b = basis[col];
    for (auto [s, t] : bl) {
      const Bits mask = site_bit(length, s) | site_bit(length, t);
      const Bits pair = b & mask;
      if (pair == 0 || pair == mask) continue;
      const auto it = index.find(b ^ mask);
      if (it == index.end()) throw Error("XX hopping left the sector basis");
      h(it->second, col) += j;
    }
  }
  return h;
}

double ising_diagonal(int length, double j, Boundary boundary, Bits b) {
  double e = 0.0;
  for (auto [s, t] : bonds(length, boundary)) {
    const bool same = ((b & site_bit(length, s)) != 0) == ((b & site_bit(length, t)) != 0);
    e -= j * (same ? 1.0 : -1.0);
  }
  return e;
}

Eigen::MatrixXd tfim_full(int length, double j, double hx, Boundary boundary) {
  const Eigen::Index n = Eigen::Index{1} << length;
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index col = 0; col < n; ++col) {
    const auto b = static_cast<Bits>(col);
    h(col, col) = ising_diagonal(length, j, boundary, b);
    for (int s = 0; s < length; ++s) h(static_cast<Eigen::Index>(b ^ site_bit(length, s)), col) -= hx;
  }
  return h;
}

// Parity-symmetrized TFIM: basis (|r> + sign |~r>)/sqrt(2), r < ~r. X_i maps
// r to r' = r ^ bit; when r' is not a representative it equals ~rep and
// contributes sign times the representative's state.
Eigen::MatrixXd tfim_parity(int length, double j, double hx, Boundary boundary, double sign) {
  const Bits all = (Bits{1} << length) - 1;
  const Bits top = site_bit(length, 0);
  const Eigen::Index n = Eigen::Index{1} << (length - 1);
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index col = 0; col < n; ++col) {
    const auto r = static_cast<Bits>(col);
    h(col, col) = ising_diagonal(length, j, boundary, r);
    for (int s = 0; s < length; ++s) {
      Bits f = r ^ site_bit(length, s);
      double amp = -hx;
      if (f & top) {
        f = (~f) & all;
        amp *= sign;
      }
      h(static_cast<Eigen::Index>(f), col) += amp;
    }
  }
  return h;
}

} // namespace

std::vector<std::uint32_t> sector_basis(const HamiltonianSpec& spec) {
  spec.validate();
  const int l = spec.length;
  switch (spec.resolved_sector()) {
  case Sector::zero_magnetization:
    return fixed_count_basis(l, l / 2);
  case Sector::even_parity:
  case Sector::odd_parity: {
    std::vector<Bits> out(std::size_t{1} << (l - 1));
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = static_cast<Bits>(i);
    return out;
  }
  default: {
    std::vector<Bits> out(std::size_t{1} << l);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = static_cast<Bits>(i);
    return out;
  }
  }
}

Eigen::MatrixXd build_sector_hamiltonian(const HamiltonianSpec& spec) {
  spec.validate();
  const Boundary bc = spec.resolved_boundary();
  const Sector sector = spec.resolved_sector();
  if (spec.model == SpinModel::xx)
    return xx_matrix(spec.length, spec.coupling, bc, sector_basis(spec));
  if (sector == Sector::full) return tfim_full(spec.length, spec.coupling, spec.field, bc);
  return tfim_parity(spec.length, spec.coupling, spec.field, bc,
                     sector == Sector::even_parity ? 1.0 : -1.0);
}

double EigenSystem::gap() const {
  for (Eigen::Index k = 1; k < eigenvalues.size(); ++k)
    if (!in_manifold(eigenvalues(k), eigenvalues(0))) return eigenvalues(k) - eigenvalues(0);
  throw DomainError("spectrum has a single level; gap undefined");
}

bool EigenSystem::in_manifold(double eigenvalue, double energy) const {
  return std::abs(eigenvalue - energy) <= 1e-10 * std::max(1.0, norm);
}

EigenSystem eigendecompose(const Eigen::MatrixXd& h) {
  if (h.rows() != h.cols() || h.rows() == 0) throw DomainError("eigendecompose needs a nonempty square matrix");
  const double scale = std::max(1.0, h.cwiseAbs().maxCoeff());
  if ((h - h.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale)
    throw DomainError("eigendecompose needs a symmetric matrix");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(h);
  if (solver.info() != Eigen::Success) throw Error("symmetric eigensolver failed");
  EigenSystem out;
  out.eigenvalues = solver.eigenvalues();
  out.eigenvectors = solver.eigenvectors();
  out.sector_dim = static_cast<std::size_t>(h.rows());
  out.norm = out.eigenvalues.cwiseAbs().maxCoeff();
  return out;
}

namespace {

Eigen::VectorXd block_ground_state(int length, int ones, double j) {
  const auto basis = fixed_count_basis(length, ones);
  if (basis.size() == 1) return Eigen::VectorXd::Ones(1);
  const auto eig = eigendecompose(xx_matrix(length, j, Boundary::open, basis));
  if (eig.in_manifold(eig.eigenvalues(1), eig.eigenvalues(0)))
    throw DomainError("fusion block ground state is degenerate");
  Eigen::VectorXd g = eig.eigenvectors.col(0);
  // Fix the overall sign so the state is reproducible across eigensolvers.
  Eigen::Index at = 0;
  g.cwiseAbs().maxCoeff(&at);
  if (g(at) < 0) g = -g;
  return g;
}

} // namespace

InitialState make_initial_state(const HamiltonianSpec& spec, const InitialStateRequest& request) {
  spec.validate();
  const auto basis = sector_basis(spec);
  const auto dim = static_cast<Eigen::Index>(basis.size());
  InitialState out;
  out.kind = request.kind;
  switch (request.kind) {
  case InitialKind::basis_index:
    if (request.index >= basis.size())
      throw DomainError("basis index " + std::to_string(request.index) + " outside sector of dimension " +
                        std::to_string(basis.size()));
    out.vector = Eigen::VectorXd::Zero(dim);
    out.vector(static_cast<Eigen::Index>(request.index)) = 1.0;
    return out;
  case InitialKind::fusion: {
    if (spec.model != SpinModel::xx || spec.resolved_sector() != Sector::zero_magnetization)
      throw DomainError("fusion state requires the XX model in the zero-magnetization sector");
    const int l = spec.length;
    if (l % 2 != 0 || l < 2) throw DomainError("fusion state requires even L");
    const int half = l / 2;
    const int left_ones = l / 4;
    const int right_ones = half - left_ones;
    const auto left_basis = fixed_count_basis(half, left_ones);
    const auto right_basis = fixed_count_basis(half, right_ones);
    const auto left = block_ground_state(half, left_ones, spec.coupling);
    const auto right = block_ground_state(half, right_ones, spec.coupling);
    std::unordered_map<Bits, Eigen::Index> index;
    for (std::size_t i = 0; i < basis.size(); ++i) index.emplace(basis[i], static_cast<Eigen::Index>(i));
    out.vector = Eigen::VectorXd::Zero(dim);
    for (std::size_t a = 0; a < left_basis.size(); ++a)
      for (std::size_t b = 0; b < right_basis.size(); ++b) {
        const Bits full = (left_basis[a] << half) | right_basis[b];
        out.vector(index.at(full)) += left(static_cast<Eigen::Index>(a)) * right(static_cast<Eigen::Index>(b));
      }
    out.vector.normalize();
    return out;
  }
  case InitialKind::plus_projected: {
    if (spec.model != SpinModel::tfim) throw DomainError("plus_projected requires the TFIM model");
    const Sector s = spec.resolved_sector();
    if (s == Sector::odd_parity) throw DomainError("|+>^L has no odd-parity component");
    out.vector = Eigen::VectorXd::Constant(dim, 1.0 / std::sqrt(static_cast<double>(dim)));
    return out;
  }
  case InitialKind::custom: {
    if (request.amplitudes.size() != basis.size())
      throw DomainError("custom state has " + std::to_string(request.amplitudes.size()) +
                        " amplitudes, sector dimension is " + std::to_string(basis.size()));
    out.vector = Eigen::Map<const Eigen::VectorXd>(request.amplitudes.data(), dim);
    if (!out.vector.allFinite()) throw DomainError("custom state amplitudes must be finite");
    const double n = out.vector.norm();
    if (!(n > 0.0)) throw DomainError("custom state must be nonzero");
    out.vector /= n;
    return out;
  }
  }
  throw DomainError("unknown initial state kind");
}

DiscreteSpectrum overlap_spectrum(const EigenSystem& eig, const Eigen::VectorXd& psi) {
  if (psi.size() != eig.eigenvectors.rows()) throw DomainError("state dimension does not match eigensystem");
  const Eigen::VectorXd c = eig.eigenvectors.transpose() * psi;
  DiscreteSpectrum out;
  out.energies.assign(eig.eigenvalues.data(), eig.eigenvalues.data() + eig.eigenvalues.size());
  out.weights.resize(static_cast<std::size_t>(c.size()));
  for (Eigen::Index k = 0; k < c.size(); ++k) out.weights[static_cast<std::size_t>(k)] = c(k) * c(k);
  return out;
}

RodeoResult ra_fidelity(const DiscreteSpectrum& overlaps, double target_energy, double tolerance,
                        const TimeSchedule& schedule) {
  CompensatedSum zeta, target;
  for (std::size_t k = 0; k < overlaps.energies.size(); ++k) {
    const double e = overlaps.energies[k];
    if (std::abs(e - target_energy) <= tolerance)
      target.add(overlaps.weights[k]);
    else
      zeta.add(overlaps.weights[k] * suppression_factor(e, target_energy, schedule));
  }
  RodeoResult r;
  r.zeta = zeta.value();
  r.target_weight = target.value();
  r.success_probability = std::min(1.0, r.target_weight + r.zeta);
  if (r.target_weight + r.zeta > 0.0) {
    r.fidelity = r.target_weight / (r.target_weight + r.zeta);
    r.infidelity = r.zeta / (r.target_weight + r.zeta);
  }
  r.raw_fidelity = r.target_weight;
  return r;
}

RodeoResult ra_fidelity(const EigenSystem& eig, const InitialState& psi, double target_energy,
                        const TimeSchedule& schedule) {
  return ra_fidelity(overlap_spectrum(eig, psi.vector), target_energy,
                     1e-10 * std::max(1.0, eig.norm), schedule);
}

double full_spectrum_gap(const HamiltonianSpec& spec) {
  spec.validate();
  if (spec.model == SpinModel::tfim) {
    HamiltonianSpec even = spec, odd = spec;
    even.sector = Sector::even_parity;
    odd.sector = Sector::odd_parity;
    const auto a = eigendecompose(build_sector_hamiltonian(even));
    const auto b = eigendecompose(build_sector_hamiltonian(odd));
    EigenSystem all;
    all.eigenvalues.resize(a.eigenvalues.size() + b.eigenvalues.size());
    all.eigenvalues << a.eigenvalues, b.eigenvalues;
    std::sort(all.eigenvalues.data(), all.eigenvalues.data() + all.eigenvalues.size());
    all.norm = std::max(a.norm, b.norm);
    return all.gap();
  }
  HamiltonianSpec full = spec;
  full.sector = Sector::full;
  return eigendecompose(build_sector_hamiltonian(full)).gap();
}

} // namespace rodeo
