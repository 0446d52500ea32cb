#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <vector>

#include "afcmem/timebin_qubit.hpp"

namespace afcmem {

using Matrix2 = Eigen::Matrix2cd;
using Matrix4 = Eigen::Matrix4cd;

// Pauli operator by index in the fixed process basis {I, X, Y, Z}.
Matrix2 pauli(int index);

// rho = |psi><psi| with |psi> = a_e|0> + a_l|1> (early bin is |0>).
Matrix2 density_matrix(const QubitState& state);

// Enforces Hermiticity within 1e-9, unit trace within 1e-9, and minimum
// eigenvalue >= -1e-9; throws DomainError otherwise.
void validate_density(const Matrix2& rho);

// Nearest (Frobenius) PSD matrix with the same trace: clip negative
// eigenvalues and redistribute their weight over the remaining ones.
Matrix2 project_to_physical(const Matrix2& rho);

enum class MeasBasis { z = 0, x = 1, y = 2 };

struct MeasurementRecord {
  MeasBasis basis = MeasBasis::z;
  std::uint64_t n_plus = 0;
  std::uint64_t n_minus = 0;
  std::uint64_t shots = 0;
};

// Binomial sampling of the +1 projector outcome; deterministic per seed.
MeasurementRecord simulate_measurement(const Matrix2& rho, MeasBasis basis,
                                       std::uint64_t shots, std::uint64_t seed);

// Linear inversion rho = (I + sum_k r_k sigma_k)/2 from one record per basis,
// then projection to the nearest physical state if sampling noise pushed an
// eigenvalue negative.
Matrix2 reconstruct_state(const std::vector<MeasurementRecord>& records);

// Exact-probability path: Bloch components given directly.
Matrix2 reconstruct_from_bloch(double rx, double ry, double rz);

using Channel = std::function<Matrix2(const Matrix2&)>;

// chi acts as rho -> sum_mn chi(m,n) sigma_m rho sigma_n.
Matrix2 apply_channel(const Matrix4& chi, const Matrix2& rho);
Channel channel_from_chi(const Matrix4& chi);

// chi = diag(1 - 3p/4, p/4, p/4, p/4): isotropic shrink of the Bloch ball by 1-p.
Matrix4 depolarizing_chi(double p);

// chi = diag(1 - px - py - pz, px, py, pz).
Matrix4 pauli_channel_chi(double px, double py, double pz);

// Pauli channel whose sigma_z eigenstates survive with fidelity f_z and whose
// equatorial eigenstates survive with fidelity f_xy; throws NoSolutionError
// if the pair is infeasible (some Pauli weight would be negative).
Matrix4 memory_channel_chi(double f_z, double f_xy);

// Feeds {Z+, Z-, X+, Y+} through the channel (six_input adds {X-, Y-} as an
// overdetermined cross-check), tomographs each output with `shots` per basis
// (0 = exact probabilities), and solves the linear system for chi in
// {I, X, Y, Z}. Hermiticity is enforced by symmetrization. Channel outputs
// with trace below one are renormalized (post-selection on detection); the
// per-input survival probabilities are reported via *eta if non-null.
Matrix4 process_tomography(const Channel& channel, std::uint64_t shots,
                           std::uint64_t seed, bool six_input = false,
                           std::vector<double>* eta = nullptr);

// F = <psi|rho|psi> for a pure target.
double state_fidelity(const Matrix2& rho, const QubitState& target);

struct BlochPoint {
  double in_a = 0.0, in_b = 0.0;    // input unit-circle coordinates in the plane
  double out_a = 0.0, out_b = 0.0;  // image of that input, same two axes
};

struct BlochCrossSections {
  std::vector<BlochPoint> xy, xz, yz;
};

// Applies the channel to pure states on the three coordinate great circles.
BlochCrossSections bloch_deformation(const Matrix4& chi, int n_samples);

}  // namespace afcmem
