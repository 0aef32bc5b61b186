// SPDX-License-Identifier: Apache-2.0
//
// Exact diagonalization of small spin chains restricted to a symmetry sector.
//
// Basis convention: a configuration is an L-bit integer with site 0 as the
// most significant bit; bit 1 is spin down. Sector bases list the allowed
// integers in increasing order. With this ordering the second zero-
// magnetization vector for L = 10 is |up up up up dn up dn dn dn dn>.
//
//   XX:   H = J sum_i (s+_i s-_{i+1} + s-_i s+_{i+1}), open chain
//   TFIM: H = -J sum_i Z_i Z_{i+1} - h sum_i X_i,      periodic chain
//
// The TFIM parity P = prod_i X_i flips every bit. Even-parity states are
// (|r> + |~r>)/sqrt(2) over representatives r with the top bit clear.
#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "rodeo/spectral.hpp"

namespace rodeo {

enum class SpinModel { xx, tfim };
enum class Boundary { open, periodic };
enum class Sector { automatic, zero_magnetization, even_parity, odd_parity, full };

inline constexpr int kMaxChainLength = 16;

struct HamiltonianSpec {
  SpinModel model = SpinModel::xx;
  int length = 10;
  double coupling = 1.0;
  double field = 0.0;
  std::optional<Boundary> boundary; // default: open for XX, periodic for TFIM
  Sector sector = Sector::automatic; // zero_magnetization for XX, even_parity for TFIM

  Boundary resolved_boundary() const;
  Sector resolved_sector() const;
  void validate() const;
};

/// Sector basis as bitstrings (representatives for parity sectors).
std::vector<std::uint32_t> sector_basis(const HamiltonianSpec& spec);

Eigen::MatrixXd build_sector_hamiltonian(const HamiltonianSpec& spec);

struct EigenSystem {
  Eigen::VectorXd eigenvalues;  // ascending
  Eigen::MatrixXd eigenvectors; // columns
  std::size_t sector_dim = 0;
  double norm = 0.0;            // max |E|, the spectral norm of H

  double ground_energy() const { return eigenvalues(0); }
  /// Lowest eigenvalue outside the ground manifold minus the ground energy.
  double gap() const;
  /// Eigenvalues within 1e-10 * max(1, |H|) of `energy`.
  bool in_manifold(double eigenvalue, double energy) const;
};

/// Dense symmetric eigensolve. Throws DomainError when H is not symmetric to
/// 1e-12 (relative to its largest entry).
EigenSystem eigendecompose(const Eigen::MatrixXd& h);

enum class InitialKind { basis_index, fusion, plus_projected, custom };

struct InitialState {
  InitialKind kind = InitialKind::basis_index;
  Eigen::VectorXd vector;
};

struct InitialStateRequest {
  InitialKind kind = InitialKind::basis_index;
  std::size_t index = 1;                // basis_index
  std::vector<double> amplitudes;      // custom; normalized on construction
};

/// basis_index: unit vector. fusion (XX, zero magnetization, even L): product
/// of the open-chain ground states of the left L/2 and right L/2 sites, with
/// floor(L/4) flipped spins on the left and the rest on the right.
/// plus_projected (TFIM, even parity or full): |+>^L, already even.
InitialState make_initial_state(const HamiltonianSpec& spec, const InitialStateRequest& request);

/// |<E_k|psi>|^2 for every eigenvector, as a discrete spectrum.
DiscreteSpectrum overlap_spectrum(const EigenSystem& eig, const Eigen::VectorXd& psi);

/// Rodeo result in the eigenbasis. Levels within the eigensystem's manifold
/// tolerance of E_t form the target.
RodeoResult ra_fidelity(const EigenSystem& eig, const InitialState& psi, double target_energy,
                        const TimeSchedule& schedule);

/// Same evaluation from precomputed overlaps; `tolerance` is the absolute
/// target-manifold width.
RodeoResult ra_fidelity(const DiscreteSpectrum& overlaps, double target_energy, double tolerance,
                        const TimeSchedule& schedule);

/// Gap of the full spectrum (all sectors). For TFIM with a parity sector
/// this diagonalizes both parities; otherwise the full Hilbert space.
double full_spectrum_gap(const HamiltonianSpec& spec);

} // namespace rodeo
