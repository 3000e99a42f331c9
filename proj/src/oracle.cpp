// Copyright 2026 The qrt Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qrt/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <random>
#include <stdexcept>

namespace qrt {

using Eigen::Index;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

/// Euclidean projection onto the probability simplex.
RealVector project_simplex(const RealVector& v) {
  RealVector u = v;
  std::sort(u.data(), u.data() + u.size(), std::greater<>());
  double cumulative = 0.0, theta = 0.0;
  for (Index i = 0; i < u.size(); ++i) {
    cumulative += u(i);
    const double t = (cumulative - 1.0) / static_cast<double>(i + 1);
    if (u(i) - t > 0.0) theta = t;
  }
  return (v.array() - theta).max(0.0).matrix();
}

/// Euclidean projection onto the unit l1 ball.
RealVector project_l1_ball(const RealVector& v) {
  if (v.cwiseAbs().sum() <= 1.0) return v;
  const RealVector w = project_simplex(v.cwiseAbs());
  return w.cwiseProduct(v.unaryExpr([](double x) { return x < 0.0 ? -1.0 : 1.0; }));
}

/// A finite parametrization of the free set.
struct FreeSpace {
  std::string description;
  std::function<HermitianMatrix(const RealVector&)> sigma;
  std::function<RealVector(const RealVector&)> project;
  std::vector<RealVector> directions;
  /// Nested grids: level k+1 contains level k.
  std::function<std::vector<RealVector>(long long)> grid;
  long long level = 0;
  double spacing = 0.0;
};

long long binomial(long long n, long long k) {
  long double r = 1.0;
  for (long long i = 1; i <= k; ++i) r = r * static_cast<long double>(n - k + i) / i;
  return static_cast<long long>(std::llround(r));
}

void compositions(long long n, Index parts, RealVector& cur, Index pos, double scale,
                  std::vector<RealVector>& out) {
  if (pos == parts - 1) {
    cur(pos) = static_cast<double>(n) * scale;
    out.push_back(cur);
    return;
  }
  for (long long k = 0; k <= n; ++k) {
    cur(pos) = static_cast<double>(k) * scale;
    compositions(n - k, parts, cur, pos + 1, scale, out);
  }
}

long long octahedron_count(long long m) { return (2 * m + 1) * (2 * m * m + 2 * m + 3) / 3; }

FreeSpace free_space(const ResourceTheory& theory, long long resolution) {
  if (resolution < 2) throw ValidationError("oracle resolution must be at least 2");
  if (resolution > 1'000'000) throw ValidationError("oracle resolution is capped at 10^6 points");
  FreeSpace s;
  const Index d = theory.dim();
  if (theory.kind() == TheoryKind::Coherence && d <= 4) {
    s.description = "diagonal simplex, " + std::to_string(d) + " weights";
    s.sigma = [](const RealVector& p) { return HermitianMatrix(p.cast<Complex>().asDiagonal()); };
    s.project = project_simplex;
    for (Index i = 0; i < d; ++i) {
      for (Index j = 0; j < d; ++j) {
        if (i == j) continue;
        RealVector e = RealVector::Zero(d);
        e(i) = 1.0;
        e(j) = -1.0;
        s.directions.push_back(e);
      }
    }
    if (d == 2) {
      s.level = resolution;
    } else {
      s.level = 1;
      while (binomial(2 * s.level + d - 1, d - 1) <= resolution) s.level *= 2;
    }
    s.spacing = 1.0 / static_cast<double>(s.level);
    s.grid = [d](long long n) {
      std::vector<RealVector> out;
      RealVector cur(d);
      compositions(n, d, cur, 0, 1.0 / static_cast<double>(n), out);
      return out;
    };
    return s;
  }
  if (theory.kind() == TheoryKind::MagicQubit && d == 2) {
    s.description = "stabilizer octahedron |x|+|y|+|z| <= 1";
    s.sigma = [](const RealVector& r) {
      HermitianMatrix m(2, 2);
      m << 1.0 + r(2), Complex(r(0), -r(1)), Complex(r(0), r(1)), 1.0 - r(2);
      return HermitianMatrix(0.5 * m);
    };
    s.project = project_l1_ball;
    for (Index i = 0; i < 3; ++i) {
      for (double a : {1.0, -1.0}) {
        RealVector e = RealVector::Zero(3);
        e(i) = a;
        s.directions.push_back(e);
        for (Index j = i + 1; j < 3; ++j) {
          for (double b : {1.0, -1.0}) {
            RealVector f = e;
            f(j) = b;
            s.directions.push_back(f);
          }
        }
      }
    }
    s.level = 1;
    while (octahedron_count(2 * s.level) <= resolution) s.level *= 2;
    s.spacing = 1.0 / static_cast<double>(s.level);
    s.grid = [](long long m) {
      std::vector<RealVector> out;
      const double scale = 1.0 / static_cast<double>(m);
      for (long long a = -m; a <= m; ++a) {
        for (long long b = -(m - std::abs(a)); b <= m - std::abs(a); ++b) {
          const long long rest = m - std::abs(a) - std::abs(b);
          for (long long c = -rest; c <= rest; ++c) {
            out.push_back(RealVector{{a * scale, b * scale, c * scale}});
          }
        }
      }
      return out;
    };
    return s;
  }
  throw OracleUnsupported("oracle has no parametrization of the free set of " + theory.name() +
                          " at dimension " + std::to_string(d));
}

struct GridMin {
  double value = kInf;
  RealVector arg;
};

GridMin grid_min(const FreeSpace& s, long long level, const std::function<double(const RealVector&)>& f,
                 long long& samples) {
  GridMin best;
  for (const RealVector& p : s.grid(level)) {
    ++samples;
    const double v = f(p);
    if (v < best.value) {
      best.value = v;
      best.arg = p;
    }
  }
  return best;
}

/// Projected compass search from `start`, halving the step on failure.
double refine(const FreeSpace& s, const std::function<double(const RealVector&)>& f, RealVector x,
              double fx, double step, long long& samples) {
  if (!std::isfinite(fx)) return fx;
  int evaluations = 0;
  while (step > 1e-11 && evaluations < 200000) {
    bool improved = false;
    for (const RealVector& dir : s.directions) {
      const RealVector y = s.project(x + step * dir);
      if ((y - x).cwiseAbs().maxCoeff() == 0.0) continue;
      ++evaluations;
      const double fy = f(y);
      if (fy < fx) {
        x = y;
        fx = fy;
        improved = true;
        break;
      }
    }
    if (!improved) step *= 0.5;
  }
  samples += evaluations;
  return fx;
}

double rmax_value(const HermitianMatrix& a, const HermitianMatrix& b) {
  return rmax(DensityMatrix(a), DensityMatrix(b)).value();
}

/// Bracket [lo, hi] for min { l in [1, 1e3] : l sigma - rho in cone(F) }.
std::pair<double, double> free_rmax_bracket(const ResourceTheory& theory, const HermitianMatrix& rho,
                                            const HermitianMatrix& sigma) {
  auto member = [&](double l) {
    return in_free_cone(theory, HermitianMatrix(l * sigma - rho), 1e-12 * std::max(1.0, l));
  };
  if (member(1.0)) return {1.0, 1.0};
  double lo = 1.0, hi = 1e3;
  if (!member(hi)) return {kInf, kInf};
  while (hi - lo > 1e-10 * hi) {
    const double mid = 0.5 * (lo + hi);
    (member(mid) ? hi : lo) = mid;
  }
  return {lo, hi};
}

OracleResult run_oracle(const ResourceTheory& theory, const DensityMatrix& rho, long long resolution,
                        const std::function<double(const HermitianMatrix&)>& objective,
                        const std::string& what) {
  if (rho.dim() != theory.dim()) throw ValidationError("oracle: state dimension does not match theory");
  const FreeSpace s = free_space(theory, resolution);
  auto f = [&](const RealVector& p) { return objective(s.sigma(p)); };
  OracleResult r;
  r.parametrization = what + " over " + s.description + ", grid level " + std::to_string(s.level);
  const GridMin fine = grid_min(s, s.level, f, r.samples);
  if (!std::isfinite(fine.value)) {
    r.lower = r.upper = kInf;
    return r;
  }
  const long long coarse_level = s.level / 2;
  const double coarse = coarse_level >= 1 ? grid_min(s, coarse_level, f, r.samples).value : kInf;
  r.upper = std::min(fine.value, refine(s, f, fine.arg, fine.value, s.spacing, r.samples));
  const double delta = std::abs(fine.value - coarse);
  r.lower = std::isfinite(delta) ? std::max(1.0, r.upper - delta) : 1.0;
  r.lower = std::min(r.lower, r.upper);
  return r;
}

}  // namespace

bool OracleResult::is_infinite() const { return std::isinf(upper); }

OracleResult omega_grid(const ResourceTheory& theory, const DensityMatrix& rho, long long resolution) {
  const HermitianMatrix& r = rho.matrix();
  return run_oracle(
      theory, rho, resolution,
      [&](const HermitianMatrix& sigma) {
        const double a = rmax_value(r, sigma);
        if (!std::isfinite(a)) return kInf;
        return a * rmax_value(sigma, r);
      },
      "rmax(rho||sigma) rmax(sigma||rho)");
}

OracleResult definitional_omega_free(const ResourceTheory& theory, const DensityMatrix& rho,
                                     long long resolution) {
  const HermitianMatrix& r = rho.matrix();
  return run_oracle(
      theory, rho, resolution,
      [&](const HermitianMatrix& sigma) {
        const double a = free_rmax_bracket(theory, r, sigma).second;
        if (!std::isfinite(a)) return kInf;
        return a * rmax_value(sigma, r);
      },
      "free-rmax(rho||sigma) rmax(sigma||rho), bisection on [1, 1e3]");
}

bool in_free_cone(const ResourceTheory& theory, const HermitianMatrix& m, double tol) {
  const Index d = theory.dim();
  if (m.rows() != d || m.cols() != d) throw ValidationError("in_free_cone: dimension mismatch");
  if (hermitian_defect(m) > tol) return false;
  if (theory.kind() == TheoryKind::Coherence) {
    for (Index j = 0; j < d; ++j) {
      if (m(j, j).real() < -tol) return false;
      for (Index k = 0; k < d; ++k) {
        if (j != k && std::abs(m(j, k)) > tol) return false;
      }
    }
    return true;
  }
  if (theory.kind() == TheoryKind::MagicQubit && d == 2) {
    // m = (t 1 + x X + y Y + z Z) / 2 is a cone element iff |x|+|y|+|z| <= t.
    const double t = (m(0, 0) + m(1, 1)).real();
    const double x = 2.0 * m(1, 0).real();
    const double y = 2.0 * m(1, 0).imag();
    const double z = (m(0, 0) - m(1, 1)).real();
    return std::abs(x) + std::abs(y) + std::abs(z) <= t + tol;
  }
  throw OracleUnsupported("no exact cone test for " + theory.name() + " at dimension " +
                          std::to_string(d));
}

bool is_incoherent_kraus(const Eigen::MatrixXcd& k, double tol) {
  for (Index c = 0; c < k.cols(); ++c) {
    if ((k.col(c).cwiseAbs().array() > tol).count() > 1) return false;
  }
  return true;
}

bool preserves_free(const ResourceTheory& theory, const KrausChannel& channel, double tol) {
  const auto cert = theory.certification_set();
  if (cert.empty()) throw OracleUnsupported("no certification set for " + theory.name());
  const bool exact = theory.kind() == TheoryKind::Coherence ||
                     (theory.kind() == TheoryKind::MagicQubit && theory.dim() == 2);
  for (const auto& sigma : cert) {
    const ChannelOutput out = apply_channel(channel, sigma);
    if (out.prob < 1e-12) continue;
    if (exact ? !in_free_cone(theory, out.out, tol) : !theory.is_free(*out.normalized, tol)) {
      return false;
    }
  }
  return true;
}

namespace {

Eigen::MatrixXcd gaussian_matrix(Index rows, Index cols, std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  Eigen::MatrixXcd m(rows, cols);
  for (Index i = 0; i < rows; ++i) {
    for (Index j = 0; j < cols; ++j) m(i, j) = Complex(n(rng), n(rng));
  }
  return m;
}

/// Proposal for the coherence theory. A quarter of the proposed branches are
/// dense and must be caught by the filter.
std::vector<KrausChannel> propose_coherence(Index d, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> branches(1, 3), ops(1, 2), row(0, static_cast<int>(d) - 1);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::normal_distribution<double> n(0.0, 1.0);
  std::vector<KrausChannel> out(branches(rng));
  for (auto& b : out) {
    const int count = ops(rng);
    const bool dense = u(rng) < 0.25;
    for (int k = 0; k < count; ++k) {
      Eigen::MatrixXcd op = Eigen::MatrixXcd::Zero(d, d);
      if (dense) {
        op = gaussian_matrix(d, d, rng);
      } else {
        for (Index c = 0; c < d; ++c) op(row(rng), c) = Complex(n(rng), n(rng));
      }
      b.kraus_ops.push_back(std::move(op));
    }
  }
  // Common rescaling leaves a random amount of room for the completion.
  Eigen::MatrixXcd total = Eigen::MatrixXcd::Zero(d, d);
  for (const auto& b : out) total += b.completeness();
  const double scale = 1.0 / std::sqrt(max_eigenvalue(symmetrize(total)) * (1.0 + u(rng)));
  for (auto& b : out) {
    for (auto& k : b.kraus_ops) k *= scale;
  }
  return out;
}

std::vector<KrausChannel> propose_magic(std::mt19937_64& rng) {
  static const auto cliffords = single_qubit_cliffords();
  std::uniform_int_distribution<std::size_t> pick_c(0, cliffords.size() - 1);
  std::uniform_int_distribution<int> pick_p(0, 2);
  std::uniform_real_distribution<double> t(0.2, 1.0);
  Eigen::Matrix2cd pauli;
  switch (pick_p(rng)) {
    case 0:
      pauli << 0, 1, 1, 0;
      break;
    case 1:
      pauli << 0, Complex(0, -1), Complex(0, 1), 0;
      break;
    default:
      pauli << 1, 0, 0, -1;
  }
  const Eigen::Matrix2cd id = Eigen::Matrix2cd::Identity();
  std::vector<KrausChannel> out;
  for (double sign : {1.0, -1.0}) {
    const Eigen::Matrix2cd proj = 0.5 * (id + sign * pauli);
    KrausChannel b;
    b.kraus_ops.push_back(std::sqrt(t(rng)) * cliffords[pick_c(rng)] * proj);
    out.push_back(std::move(b));
  }
  return out;
}

/// Adds the branch sqrt(1 - sum K^dag K); for coherence it discards into |0>.
void complete(const ResourceTheory& theory, std::vector<KrausChannel>& inst, std::mt19937_64& rng) {
  const Index d = theory.dim();
  Eigen::MatrixXcd total = Eigen::MatrixXcd::Zero(d, d);
  for (const auto& b : inst) total += b.completeness();
  const HermitianMatrix residual = symmetrize(HermitianMatrix(HermitianMatrix::Identity(d, d) - total));
  const auto eig = hermitian_eig(residual, 1e-8);
  KrausChannel rest;
  if (theory.kind() == TheoryKind::Coherence) {
    for (Index j = 0; j < d; ++j) {
      if (eig.values(j) <= 1e-14) continue;
      Eigen::MatrixXcd op = Eigen::MatrixXcd::Zero(d, d);
      op.row(0) = std::sqrt(eig.values(j)) * eig.vectors.col(j).adjoint();
      rest.kraus_ops.push_back(std::move(op));
    }
  } else {
    // The residual is diagonal in the measured Pauli basis; follow each
    // leftover projector with a random Clifford.
    static const auto cliffords = single_qubit_cliffords();
    std::uniform_int_distribution<std::size_t> pick_c(0, cliffords.size() - 1);
    for (Index j = 0; j < d; ++j) {
      if (eig.values(j) <= 1e-14) continue;
      const Eigen::MatrixXcd op = std::sqrt(eig.values(j)) * Eigen::MatrixXcd(cliffords[pick_c(rng)]) *
                                  eig.vectors.col(j) * eig.vectors.col(j).adjoint();
      rest.kraus_ops.push_back(op);
    }
  }
  if (!rest.kraus_ops.empty()) inst.push_back(std::move(rest));
}

}  // namespace

std::vector<KrausChannel> random_free_instrument(const ResourceTheory& theory, std::uint64_t seed) {
  const bool coherence = theory.kind() == TheoryKind::Coherence;
  const bool magic = theory.kind() == TheoryKind::MagicQubit && theory.dim() == 2;
  if (!coherence && !magic) {
    throw OracleUnsupported("random free instruments are provided for coherence and single-qubit magic");
  }
  std::mt19937_64 rng(seed);
  for (int round = 0; round < 1000; ++round) {
    std::vector<KrausChannel> inst = coherence ? propose_coherence(theory.dim(), rng) : propose_magic(rng);
    bool ok = true;
    for (const auto& b : inst) {
      if (coherence) {
        for (const auto& k : b.kraus_ops) ok = ok && is_incoherent_kraus(k);
      }
      ok = ok && preserves_free(theory, b);
    }
    if (!ok) continue;
    complete(theory, inst, rng);
    Eigen::MatrixXcd total = Eigen::MatrixXcd::Zero(theory.dim(), theory.dim());
    for (const auto& b : inst) {
      b.validate(1e-9);
      if (!preserves_free(theory, b)) ok = false;
      total += b.completeness();
    }
    if (!ok || (total - Eigen::MatrixXcd::Identity(theory.dim(), theory.dim())).norm() > 1e-9) continue;
    return inst;
  }
  throw std::runtime_error("random_free_instrument: seed exhausted after 1000 rejected draws");
}

}  // namespace qrt
