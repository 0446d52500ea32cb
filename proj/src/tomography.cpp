#include "afcmem/tomography.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "afcmem/rng.hpp"
#include "afcmem/spectral_medium.hpp"

namespace afcmem {
namespace {

const cdouble kI{0.0, 1.0};

Matrix4 kron2(const Matrix2& b, const Matrix2& c) {
  Matrix4 out;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) out.block<2, 2>(2 * i, 2 * j) = b(i, j) * c;
  return out;
}

Eigen::Vector4cd vec_colmajor(const Matrix2& m) {
  return Eigen::Vector4cd(m(0, 0), m(1, 0), m(0, 1), m(1, 1));
}

double bloch_component(const Matrix2& rho, int pauli_index) {
  return (pauli(pauli_index) * rho).trace().real();
}

}  // namespace

Matrix2 pauli(int index) {
  Matrix2 m;
  switch (index) {
    case 0: m << 1, 0, 0, 1; break;
    case 1: m << 0, 1, 1, 0; break;
    case 2: m << 0, -kI, kI, 0; break;
    case 3: m << 1, 0, 0, -1; break;
    default: throw ConfigError("pauli index must be 0..3");
  }
  return m;
}

Matrix2 density_matrix(const QubitState& state) {
  Eigen::Vector2cd psi(state.a_e, state.a_l);
  const double norm = psi.norm();
  if (norm <= 0.0) throw DomainError("qubit state has zero norm");
  psi /= norm;
  return psi * psi.adjoint();
}

void validate_density(const Matrix2& rho) {
  if ((rho - rho.adjoint()).norm() >= 1e-9)
    throw DomainError("density matrix is not Hermitian");
  if (std::abs(rho.trace().real() - 1.0) >= 1e-9 || std::abs(rho.trace().imag()) >= 1e-9)
    throw DomainError("density matrix trace differs from one");
  Eigen::SelfAdjointEigenSolver<Matrix2> solver(rho);
  if (solver.eigenvalues().minCoeff() < -1e-9)
    throw DomainError("density matrix has a negative eigenvalue");
}

Matrix2 project_to_physical(const Matrix2& rho) {
  const Matrix2 herm = 0.5 * (rho + rho.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix2> solver(herm);
  Eigen::Vector2d lam = solver.eigenvalues();  // ascending
  // Clip negative eigenvalues, spreading the deficit over the survivors so
  // the trace is preserved (nearest PSD matrix in Frobenius norm).
  double carry = 0.0;
  for (int i = 0; i < 2; ++i) {
    const int remaining = 2 - i;
    if (lam[i] + carry / remaining < 0.0) {
      carry += lam[i];
      lam[i] = 0.0;
    } else {
      for (int j = i; j < 2; ++j) lam[j] += carry / remaining;
      break;
    }
  }
  return solver.eigenvectors() * lam.asDiagonal() * solver.eigenvectors().adjoint();
}

MeasurementRecord simulate_measurement(const Matrix2& rho, MeasBasis basis,
                                       std::uint64_t shots, std::uint64_t seed) {
  validate_density(rho);
  if (shots < 1) throw ConfigError("measurement needs at least one shot");
  const int axis = static_cast<int>(basis) == 0 ? 3 : static_cast<int>(basis);
  const Matrix2 projector = 0.5 * (pauli(0) + pauli(axis));
  const double p_plus = std::clamp((rho * projector).trace().real(), 0.0, 1.0);
  std::mt19937_64 gen(seed);
  std::binomial_distribution<std::uint64_t> dist(shots, p_plus);
  MeasurementRecord record;
  record.basis = basis;
  record.shots = shots;
  record.n_plus = dist(gen);
  record.n_minus = shots - record.n_plus;
  return record;
}

Matrix2 reconstruct_state(const std::vector<MeasurementRecord>& records) {
  if (records.empty()) throw ConfigError("state reconstruction needs measurement records");
  bool seen[3] = {false, false, false};
  double r[3] = {0.0, 0.0, 0.0};  // order z, x, y
  for (const auto& record : records) {
    const auto idx = static_cast<int>(record.basis);
    const std::uint64_t detected = record.n_plus + record.n_minus;
    if (detected == 0) throw ConfigError("measurement record has no detected events");
    seen[idx] = true;
    r[idx] = (static_cast<double>(record.n_plus) - static_cast<double>(record.n_minus)) /
             static_cast<double>(detected);
  }
  if (!(seen[0] && seen[1] && seen[2]))
    throw ConfigError("state reconstruction needs one record per basis Z, X, Y");
  return reconstruct_from_bloch(r[1], r[2], r[0]);
}

Matrix2 reconstruct_from_bloch(double rx, double ry, double rz) {
  Matrix2 rho = 0.5 * (pauli(0) + rx * pauli(1) + ry * pauli(2) + rz * pauli(3));
  Eigen::SelfAdjointEigenSolver<Matrix2> solver(rho);
  if (solver.eigenvalues().minCoeff() < 0.0) rho = project_to_physical(rho);
  return rho;
}

Matrix2 apply_channel(const Matrix4& chi, const Matrix2& rho) {
  Matrix2 out = Matrix2::Zero();
  for (int m = 0; m < 4; ++m)
    for (int n = 0; n < 4; ++n) {
      if (chi(m, n) == cdouble{0.0, 0.0}) continue;
      out += chi(m, n) * pauli(m) * rho * pauli(n);
    }
  return out;
}

Channel channel_from_chi(const Matrix4& chi) {
  return [chi](const Matrix2& rho) { return apply_channel(chi, rho); };
}

Matrix4 depolarizing_chi(double p) {
  if (p < 0.0 || p > 4.0 / 3.0)
    throw ConfigError("depolarizing strength must lie in [0, 4/3]");
  Matrix4 chi = Matrix4::Zero();
  chi(0, 0) = 1.0 - 0.75 * p;
  chi(1, 1) = chi(2, 2) = chi(3, 3) = 0.25 * p;
  return chi;
}

Matrix4 pauli_channel_chi(double px, double py, double pz) {
  if (px < 0.0 || py < 0.0 || pz < 0.0 || px + py + pz > 1.0)
    throw ConfigError("Pauli weights must be non-negative and sum to at most one");
  Matrix4 chi = Matrix4::Zero();
  chi(0, 0) = 1.0 - px - py - pz;
  chi(1, 1) = px;
  chi(2, 2) = py;
  chi(3, 3) = pz;
  return chi;
}

Matrix4 memory_channel_chi(double f_z, double f_xy) {
  const double lz = 2.0 * f_z - 1.0;
  const double lx = 2.0 * f_xy - 1.0;  // equatorial multiplier, shared by X and Y
  const double pi = 0.25 * (1.0 + 2.0 * lx + lz);
  const double pxy = 0.25 * (1.0 - lz);
  const double pz = 0.25 * (1.0 - 2.0 * lx + lz);
  if (pi < 0.0 || pxy < 0.0 || pz < 0.0)
    throw NoSolutionError("fidelity pair is not realizable by a Pauli channel");
  Matrix4 chi = Matrix4::Zero();
  chi(0, 0) = pi;
  chi(1, 1) = chi(2, 2) = pxy;
  chi(3, 3) = pz;
  return chi;
}

Matrix4 process_tomography(const Channel& channel, std::uint64_t shots,
                           std::uint64_t seed, bool six_input,
                           std::vector<double>* eta) {
  std::vector<QubitState> inputs = {QubitState::z_plus(), QubitState::z_minus(),
                                    QubitState::x_plus(), QubitState::y_plus()};
  if (six_input) {
    inputs.push_back(QubitState::x_minus());
    inputs.push_back(QubitState::y_minus());
  }
  if (eta) eta->clear();

  std::vector<Matrix2> outputs;
  outputs.reserve(inputs.size());
  for (std::size_t idx = 0; idx < inputs.size(); ++idx) {
    const Matrix2 raw = channel(density_matrix(inputs[idx]));
    if ((raw - raw.adjoint()).norm() > 1e-6)
      throw DomainError("channel output is not Hermitian");
    const double trace = raw.trace().real();
    if (trace <= 1e-12) throw DomainError("channel output has vanishing trace");
    if (trace > 1.0 + 1e-6) throw DomainError("channel output trace exceeds one");
    if (eta) eta->push_back(std::min(trace, 1.0));
    Matrix2 conditioned = 0.5 * (raw + raw.adjoint()) / trace;  // post-selection
    Eigen::SelfAdjointEigenSolver<Matrix2> solver(conditioned);
    if (solver.eigenvalues().minCoeff() < -1e-6)
      throw DomainError("channel output is not positive semidefinite");
    conditioned = project_to_physical(conditioned);

    if (shots == 0) {
      outputs.push_back(conditioned);
    } else {
      std::vector<MeasurementRecord> records;
      for (int b = 0; b < 3; ++b)
        records.push_back(simulate_measurement(conditioned, static_cast<MeasBasis>(b), shots,
                                               derive_seed(seed, idx * 3 + b)));
      outputs.push_back(reconstruct_state(records));
    }
  }

  // Images of the matrix units E_ab = |a><b| by linearity.
  const Matrix2 e00 = outputs[0];
  const Matrix2 e11 = outputs[1];
  Matrix2 e01, e10;
  if (six_input) {
    const Matrix2 lx = outputs[2] - outputs[4];  // image of sigma_x
    const Matrix2 ly = outputs[3] - outputs[5];  // image of sigma_y
    e01 = 0.5 * (lx + kI * ly);
    e10 = 0.5 * (lx - kI * ly);
  } else {
    const Matrix2 sum = e00 + e11;
    e01 = outputs[2] + kI * outputs[3] - 0.5 * (1.0 + kI) * sum;
    e10 = outputs[2] - kI * outputs[3] - 0.5 * (1.0 - kI) * sum;
  }

  // Superoperator on column-major vectorization: column 2b + a holds vec(E_ab image).
  Matrix4 s;
  s.col(0) = vec_colmajor(e00);
  s.col(1) = vec_colmajor(e10);
  s.col(2) = vec_colmajor(e01);
  s.col(3) = vec_colmajor(e11);

  Matrix4 chi;
  for (int m = 0; m < 4; ++m)
    for (int n = 0; n < 4; ++n) {
      const Matrix4 basis_op = kron2(pauli(n).conjugate(), pauli(m));
      chi(m, n) = (basis_op.adjoint() * s).trace() / 4.0;
    }
  return 0.5 * (chi + chi.adjoint().eval());
}

double state_fidelity(const Matrix2& rho, const QubitState& target) {
  Eigen::Vector2cd psi(target.a_e, target.a_l);
  const double norm = psi.norm();
  if (norm <= 0.0) throw DomainError("target state has zero norm");
  psi /= norm;
  return std::real((psi.adjoint() * rho * psi)(0, 0));
}

BlochCrossSections bloch_deformation(const Matrix4& chi, int n_samples) {
  if (n_samples < 1) throw ConfigError("cross sections need at least one sample");
  const Channel channel = channel_from_chi(chi);
  const int planes[3][2] = {{1, 2}, {1, 3}, {2, 3}};  // (X,Y), (X,Z), (Y,Z)
  BlochCrossSections sections;
  std::vector<BlochPoint>* target[3] = {&sections.xy, &sections.xz, &sections.yz};
  for (int p = 0; p < 3; ++p) {
    const int a = planes[p][0], b = planes[p][1];
    for (int s = 0; s < n_samples; ++s) {
      const double theta = kTwoPi * s / n_samples;
      const double ca = std::cos(theta), cb = std::sin(theta);
      const Matrix2 rho_in = 0.5 * (pauli(0) + ca * pauli(a) + cb * pauli(b));
      Matrix2 rho_out = channel(rho_in);
      const double trace = rho_out.trace().real();
      if (trace <= 1e-12) throw DomainError("channel output has vanishing trace");
      rho_out /= trace;
      target[p]->push_back(
          {ca, cb, bloch_component(rho_out, a), bloch_component(rho_out, b)});
    }
  }
  return sections;
}

}  // namespace afcmem
