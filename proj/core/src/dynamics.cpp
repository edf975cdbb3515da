#include "qnnw/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace qnnw {

std::size_t pair_index(int a, int b, int n_qubits) {
  if (a == b || a < 0 || b < 0 || a >= n_qubits || b >= n_qubits)
    throw std::out_of_range("invalid qubit pair");
  if (a > b) std::swap(a, b);
  // pairs (0,1)..(0,n-1), (1,2).. precede (a, b)
  return static_cast<std::size_t>(a * n_qubits - a * (a + 1) / 2 + (b - a - 1));
}

ChunkParams ChunkParams::zeros(int n_qubits) {
  const auto n = static_cast<std::size_t>(n_qubits);
  return {std::vector<double>(n, 0.0), std::vector<double>(n, 0.0),
          std::vector<double>(pair_count(n_qubits), 0.0)};
}

void ChunkParams::validate(int n_qubits) const {
  const auto n = static_cast<std::size_t>(n_qubits);
  if (k.size() != n || eps.size() != n || zeta.size() != pair_count(n_qubits))
    throw DimensionError("chunk parameters are not sized for " + std::to_string(n_qubits) + " qubits");
  auto finite = [](const std::vector<double>& v) {
    return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
  };
  if (!finite(k) || !finite(eps) || !finite(zeta)) throw std::invalid_argument("non-finite chunk parameter");
}

QnnParameters QnnParameters::zeros(int n_qubits, int n_chunks) {
  return {n_qubits, std::vector<ChunkParams>(static_cast<std::size_t>(n_chunks), ChunkParams::zeros(n_qubits))};
}

QnnParameters QnnParameters::uniform_tunneling(int n_qubits, int n_chunks, double tunneling) {
  auto p = zeros(n_qubits, n_chunks);
  for (auto& c : p.chunks) std::fill(c.k.begin(), c.k.end(), tunneling);
  return p;
}

void QnnParameters::validate() const {
  if (n_qubits < 1 || n_qubits > 6) throw DimensionError("unsupported qubit count");
  for (const auto& c : chunks) c.validate(n_qubits);
}

std::vector<double> QnnParameters::flatten() const {
  std::vector<double> out;
  out.reserve(size());
  for (const auto& c : chunks) {
    out.insert(out.end(), c.k.begin(), c.k.end());
    out.insert(out.end(), c.eps.begin(), c.eps.end());
    out.insert(out.end(), c.zeta.begin(), c.zeta.end());
  }
  return out;
}

QnnParameters QnnParameters::unflatten(int n_qubits, int n_chunks, std::span<const double> values) {
  auto p = zeros(n_qubits, n_chunks);
  if (values.size() != p.size()) throw DimensionError("flat parameter vector has the wrong length");
  auto it = values.begin();
  for (auto& c : p.chunks) {
    for (auto& x : c.k) x = *it++;
    for (auto& x : c.eps) x = *it++;
    for (auto& x : c.zeta) x = *it++;
  }
  return p;
}

void QnnParameters::axpy(double scale, const QnnParameters& other) {
  if (other.n_qubits != n_qubits || other.chunks.size() != chunks.size())
    throw DimensionError("parameter shapes differ");
  for (std::size_t c = 0; c < chunks.size(); ++c) {
    auto add = [scale](std::vector<double>& dst, const std::vector<double>& src) {
      for (std::size_t i = 0; i < dst.size(); ++i) dst[i] += scale * src[i];
    };
    add(chunks[c].k, other.chunks[c].k);
    add(chunks[c].eps, other.chunks[c].eps);
    add(chunks[c].zeta, other.chunks[c].zeta);
  }
}

void Schedule::validate() const {
  if (!(t_final > 0.0) || !(dt > 0.0) || n_chunks < 1) throw std::invalid_argument("schedule must be positive");
  const double steps = t_final / n_chunks / dt;
  if (std::abs(steps - std::round(steps)) > 1e-9 * std::max(1.0, steps) || std::round(steps) < 1.0)
    throw std::invalid_argument("chunk length is not a whole number of integrator steps");
}

int Schedule::steps_per_chunk() const {
  validate();
  return static_cast<int>(std::lround(t_final / n_chunks / dt));
}

namespace {

// +1 for |0>, -1 for |1> on qubit q of basis index i.
inline double z_sign(std::size_t i, int q, int n) { return (i & qubit_bit(q, n)) ? -1.0 : 1.0; }

void check_shapes(const DensityMatrix& rho0, const QnnParameters& params, const Schedule& sched) {
  sched.validate();
  params.validate();
  if (params.n_chunks() != sched.n_chunks) throw DimensionError("parameter chunk count differs from schedule");
  if (rho0.n_qubits() != params.n_qubits) throw DimensionError("state and parameters have different qubit counts");
}

}  // namespace

ComplexMatrix build_hamiltonian(const ChunkParams& p, int n_qubits, const UnitConvention& u) {
  p.validate(n_qubits);
  const std::size_t d = std::size_t{1} << n_qubits;
  ComplexMatrix h(d);
  const auto id2 = ComplexMatrix::identity(2);
  auto embed = [&](const std::vector<std::pair<int, ComplexMatrix>>& factors) {
    ComplexMatrix out = ComplexMatrix::identity(1);
    for (int q = 0; q < n_qubits; ++q) {
      const ComplexMatrix* f = &id2;
      for (const auto& [fq, m] : factors)
        if (fq == q) f = &m;
      out = kron(out, *f);
    }
    return out;
  };
  const auto sx = ComplexMatrix::pauli_x();
  const auto sz = ComplexMatrix::pauli_z();
  for (int a = 0; a < n_qubits; ++a) {
    h += embed({{a, sx}}) * Complex(p.k[a]);
    h += embed({{a, sz}}) * Complex(p.eps[a]);
    for (int b = a + 1; b < n_qubits; ++b)
      h += embed({{a, sz}, {b, sz}}) * Complex(u.pair_weight() * p.zeta_at(a, b));
  }
  h *= u.angular_factor;
  return h;
}

Liouvillian::Liouvillian(const ChunkParams& p, int n_qubits, const UnitConvention& u)
    : n_(n_qubits), diag_(std::size_t{1} << n_qubits, 0.0), flip_(static_cast<std::size_t>(n_qubits)) {
  p.validate(n_qubits);
  for (std::size_t i = 0; i < diag_.size(); ++i) {
    double e = 0.0;
    for (int a = 0; a < n_; ++a) {
      e += p.eps[a] * z_sign(i, a, n_);
      for (int b = a + 1; b < n_; ++b) e += u.pair_weight() * p.zeta_at(a, b) * z_sign(i, a, n_) * z_sign(i, b, n_);
    }
    diag_[i] = u.angular_factor * e;
  }
  for (int a = 0; a < n_; ++a) flip_[a] = u.angular_factor * p.k[a];
}

void Liouvillian::apply(std::span<const Complex> x, std::span<Complex> out) const {
  const std::size_t d = diag_.size();
  for (std::size_t i = 0; i < d; ++i) {
    const Complex* xi = x.data() + i * d;
    Complex* oi = out.data() + i * d;
    for (std::size_t j = 0; j < d; ++j) oi[j] = (diag_[i] - diag_[j]) * xi[j];
    for (int a = 0; a < n_; ++a) {
      const double w = flip_[a];
      if (w == 0.0) continue;
      const std::size_t m = qubit_bit(a, n_);
      const Complex* xf = x.data() + (i ^ m) * d;
      for (std::size_t j = 0; j < d; ++j) oi[j] += w * (xf[j] - xi[j ^ m]);
    }
    // multiply by -i
    for (std::size_t j = 0; j < d; ++j) oi[j] = Complex(oi[j].imag(), -oi[j].real());
  }
}

Trajectory::Trajectory(std::size_t dim, std::size_t n_states)
    : dim_(dim), n_states_(n_states), data_(dim * dim * n_states) {}

std::span<const Complex> Trajectory::state(std::size_t i) const {
  if (i >= n_states_) throw std::out_of_range("trajectory index out of range");
  return {data_.data() + i * dim_ * dim_, dim_ * dim_};
}

std::span<Complex> Trajectory::state(std::size_t i) {
  if (i >= n_states_) throw std::out_of_range("trajectory index out of range");
  return {data_.data() + i * dim_ * dim_, dim_ * dim_};
}

ComplexMatrix Trajectory::matrix(std::size_t i) const {
  const auto s = state(i);
  return ComplexMatrix(dim_, std::vector<Complex>(s.begin(), s.end()));
}

namespace {

struct Rk4Work {
  explicit Rk4Work(std::size_t n) : k1(n), k2(n), k3(n), k4(n), tmp(n) {}
  std::vector<Complex> k1, k2, k3, k4, tmp;
};

void axpy_into(std::span<const Complex> x, double h, std::span<const Complex> k, std::span<Complex> out) {
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = x[i] + h * k[i];
}

// next = RK4 step of x; next may not alias x.
void rk4_step(const Liouvillian& gen, double h, std::span<const Complex> x, std::span<Complex> next, Rk4Work& w) {
  gen.apply(x, w.k1);
  axpy_into(x, 0.5 * h, w.k1, w.tmp);
  gen.apply(w.tmp, w.k2);
  axpy_into(x, 0.5 * h, w.k2, w.tmp);
  gen.apply(w.tmp, w.k3);
  axpy_into(x, h, w.k3, w.tmp);
  gen.apply(w.tmp, w.k4);
  const double h6 = h / 6.0;
  for (std::size_t i = 0; i < x.size(); ++i)
    next[i] = x[i] + h6 * (w.k1[i] + 2.0 * w.k2[i] + 2.0 * w.k3[i] + w.k4[i]);
}

}  // namespace

DensityMatrix evolve(const DensityMatrix& rho0, const QnnParameters& params, const Schedule& sched,
                     const UnitConvention& u) {
  check_shapes(rho0, params, sched);
  const int n = params.n_qubits;
  const std::size_t len = rho0.dim() * rho0.dim();
  std::vector<Complex> cur(rho0.matrix().data().begin(), rho0.matrix().data().end());
  std::vector<Complex> next(len);
  Rk4Work work(len);
  const int steps = sched.steps_per_chunk();
  for (const auto& chunk : params.chunks) {
    const Liouvillian gen(chunk, n, u);
    for (int s = 0; s < steps; ++s) {
      rk4_step(gen, sched.dt, cur, next, work);
      cur.swap(next);
    }
  }
  return DensityMatrix::unchecked(ComplexMatrix(rho0.dim(), std::move(cur)));
}

DensityMatrix evolve_into(const DensityMatrix& rho0, const QnnParameters& params, const Schedule& sched,
                          const UnitConvention& u, Trajectory& traj) {
  check_shapes(rho0, params, sched);
  const int n = params.n_qubits;
  const std::size_t d = rho0.dim();
  const std::size_t n_states = static_cast<std::size_t>(sched.total_steps()) + 1;
  if (traj.dim() != d || traj.size() != n_states) traj = Trajectory(d, n_states);
  std::copy(rho0.matrix().data().begin(), rho0.matrix().data().end(), traj.state(0).begin());
  Rk4Work work(d * d);
  const int steps = sched.steps_per_chunk();
  std::size_t idx = 0;
  for (const auto& chunk : params.chunks) {
    const Liouvillian gen(chunk, n, u);
    for (int s = 0; s < steps; ++s, ++idx) rk4_step(gen, sched.dt, traj.state(idx), traj.state(idx + 1), work);
  }
  return DensityMatrix::unchecked(traj.matrix(idx));
}

ForwardSolution evolve_with_trajectory(const DensityMatrix& rho0, const QnnParameters& params,
                                       const Schedule& sched, const UnitConvention& u) {
  ForwardSolution sol;
  sol.final_state = evolve_into(rho0, params, sched, u, sol.trajectory);
  return sol;
}

namespace {

// Per-chunk accumulators for <kbar, (dL/dp) u> summed over RK4 stages.
struct ChunkAccumulator {
  ChunkAccumulator(std::size_t d, int n) : diag(d, 0.0), flip(static_cast<std::size_t>(n), 0.0) {}
  // sum_ij (z_i - z_j) Im(conj(kb_ij) u_ij) = sum_i z_i diag[i] for a
  // diagonal generator z
  std::vector<double> diag;
  // sum_ij Im(conj(kb_ij) (u_{i^m, j} - u_{i, j^m})) per qubit
  std::vector<double> flip;

  void add(std::span<const Complex> kb, std::span<const Complex> u, int n) {
    const std::size_t d = diag.size();
    for (std::size_t i = 0; i < d; ++i) {
      const Complex* kbi = kb.data() + i * d;
      const Complex* ui = u.data() + i * d;
      for (std::size_t j = 0; j < d; ++j) {
        const double m = (std::conj(kbi[j]) * ui[j]).imag();
        diag[i] += m;
        diag[j] -= m;
      }
      for (int a = 0; a < n; ++a) {
        const std::size_t mask = qubit_bit(a, n);
        const Complex* uf = u.data() + (i ^ mask) * d;
        double acc = 0.0;
        for (std::size_t j = 0; j < d; ++j) acc += (std::conj(kbi[j]) * (uf[j] - ui[j ^ mask])).imag();
        flip[a] += acc;
      }
    }
  }
};

}  // namespace

ParameterGradient evolve_adjoint(const ComplexMatrix& lambda_f, const QnnParameters& params,
                                 const Schedule& sched, const UnitConvention& u, const Trajectory& traj) {
  sched.validate();
  params.validate();
  const int n = params.n_qubits;
  const std::size_t d = std::size_t{1} << n;
  if (params.n_chunks() != sched.n_chunks) throw DimensionError("parameter chunk count differs from schedule");
  if (lambda_f.dim() != d) throw DimensionError("terminal sensitivity has the wrong dimension");
  const int steps = sched.steps_per_chunk();
  if (traj.dim() != d || traj.size() != static_cast<std::size_t>(sched.total_steps()) + 1)
    throw DimensionError("trajectory does not match parameters and schedule");

  const std::size_t len = d * d;
  const double h = sched.dt;
  std::vector<Complex> lam(lambda_f.data().begin(), lambda_f.data().end());
  std::vector<Complex> u1(len), u2(len), u3(len), u4(len), k(len), kb(len), ub(len), ubsum(len);

  ParameterGradient grad = QnnParameters::zeros(n, params.n_chunks());
  for (int c = params.n_chunks() - 1; c >= 0; --c) {
    const Liouvillian gen(params.chunks[c], n, u);
    ChunkAccumulator acc(d, n);
    for (int s = steps - 1; s >= 0; --s) {
      const auto x = traj.state(static_cast<std::size_t>(c) * steps + s);
      // recompute the stage inputs of this step
      std::copy(x.begin(), x.end(), u1.begin());
      gen.apply(u1, k);
      axpy_into(x, 0.5 * h, k, u2);
      gen.apply(u2, k);
      axpy_into(x, 0.5 * h, k, u3);
      gen.apply(u3, k);
      axpy_into(x, h, k, u4);

      // reverse sweep; the adjoint of L is -L
      auto stage = [&](double lam_w, double ub_w, bool use_ub, const std::vector<Complex>& uin) {
        for (std::size_t i = 0; i < len; ++i) kb[i] = lam_w * lam[i] + (use_ub ? ub_w * ub[i] : Complex(0.0));
        acc.add(kb, uin, n);
        gen.apply(kb, ub);
        for (std::size_t i = 0; i < len; ++i) {
          ub[i] = -ub[i];
          ubsum[i] += ub[i];
        }
      };
      std::fill(ubsum.begin(), ubsum.end(), Complex(0.0));
      stage(h / 6.0, 0.0, false, u4);
      stage(h / 3.0, h, true, u3);
      stage(h / 3.0, 0.5 * h, true, u2);
      stage(h / 6.0, 0.5 * h, true, u1);
      for (std::size_t i = 0; i < len; ++i) lam[i] += ubsum[i];
    }

    auto& g = grad.chunks[c];
    const double a = u.angular_factor;
    for (int q = 0; q < n; ++q) {
      g.k[q] = a * acc.flip[q];
      double e = 0.0;
      for (std::size_t i = 0; i < d; ++i) e += z_sign(i, q, n) * acc.diag[i];
      g.eps[q] = a * e;
      for (int b = q + 1; b < n; ++b) {
        double z = 0.0;
        for (std::size_t i = 0; i < d; ++i) z += z_sign(i, q, n) * z_sign(i, b, n) * acc.diag[i];
        g.zeta_at(q, b) = a * u.pair_weight() * z;
      }
    }
  }
  return grad;
}

}  // namespace qnnw
