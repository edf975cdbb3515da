#include "qnnw/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <stdexcept>

#include "qnnw/oracle.hpp"
#include "qnnw/parallel.hpp"
#include "qnnw/states.hpp"
#include "qnnw/witness.hpp"

namespace qnnw {

std::size_t CsvTable::column(std::string_view name) const {
  const auto it = std::find(header.begin(), header.end(), name);
  if (it == header.end()) throw std::out_of_range("no CSV column " + std::string(name));
  return static_cast<std::size_t>(it - header.begin());
}

std::string CsvTable::to_csv() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < header.size(); ++i) os << (i ? "," : "") << header[i];
  os << '\n';
  char buf[40];
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      std::snprintf(buf, sizeof buf, "%.10g", row[i]);
      os << (i ? "," : "") << buf;
    }
    os << '\n';
  }
  return os.str();
}

std::vector<double> unit_grid(double step) {
  if (!(step > 0.0) || step > 1.0 || !std::isfinite(step)) throw std::invalid_argument("grid step must be in (0, 1]");
  const int n = static_cast<int>(std::floor(1.0 / step + 1e-9));
  std::vector<double> g;
  for (int i = 0; i <= n; ++i) g.push_back(std::min(1.0, i * step));
  if (g.back() < 1.0 - 1e-12) g.push_back(1.0);
  return g;
}

namespace {

PureState basis_combo(int n_local, const std::vector<std::pair<const char*, double>>& terms, int n_register) {
  StateSpec spec{n_local, {}};
  for (const auto& [bits, amp] : terms) spec.terms.push_back({bits, Complex(amp)});
  return pad_with_zeros(make_state(spec), n_register - n_local);
}

void require_qubits(const QnnParameters& p, int at_least, std::string_view figure) {
  if (p.n_qubits < at_least)
    throw std::invalid_argument(std::string(figure) + " sweep needs parameters for at least " +
                                std::to_string(at_least) + " qubits");
}

double mean(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

double stddev(const std::vector<double>& v) {
  const double m = mean(v);
  double s = 0.0;
  for (double x : v) s += (x - m) * (x - m);
  return std::sqrt(s / static_cast<double>(v.size()));
}

double pairwise_total(const WitnessVector& w) {
  double s = 0.0;
  const auto& subsets = canonical_subsets(w.n_qubits);
  for (std::size_t i = 0; i < subsets.size(); ++i)
    if (subsets[i].size() == 2) s += w.values[i];
  return s;
}

double tangle_total(const DensityMatrix& rho) {
  const auto rep = tangle_report(rho);
  double s = 0.0;
  for (double t : rep.pairwise_tangle) s += t;
  return s;
}

CsvTable sweep_wvsk(const QnnParameters& p, const Schedule& sched, const UnitConvention& u) {
  const int n = p.n_qubits;
  CsvTable t{{"k", "n_states", "mean_pairwise_total", "std_pairwise_total", "mean_pairwise_total_flipped",
              "std_pairwise_total_flipped", "oracle_pairwise_total"},
             {}};
  for (int k = 1; k <= n; ++k) {
    std::vector<std::pair<QubitSubset, std::vector<int>>> members;
    for (std::uint32_t m = 0; m < (1u << n); ++m) {
      const QubitSubset s(m);
      if (s.size() != k) continue;
      for (auto& signs : sign_patterns(k)) members.emplace_back(s, signs);
    }
    std::vector<double> plain(members.size()), flipped(members.size()), oracle(members.size());
    parallel_for(members.size(), [&](std::size_t i) {
      const DensityMatrix w(w_state(members[i].first, members[i].second, false, n));
      const DensityMatrix wf(w_state(members[i].first, members[i].second, true, n));
      plain[i] = pairwise_total(evaluate(w, p, sched, u));
      flipped[i] = pairwise_total(evaluate(wf, p, sched, u));
      oracle[i] = tangle_total(w);
    });
    t.rows.push_back({static_cast<double>(k), static_cast<double>(members.size()), mean(plain), stddev(plain),
                      mean(flipped), stddev(flipped), mean(oracle)});
  }
  return t;
}

std::vector<std::pair<double, double>> square_grid(double step) {
  std::vector<std::pair<double, double>> pts;
  for (double a : unit_grid(step))
    for (double b : unit_grid(step)) pts.emplace_back(a, b);
  return pts;
}

std::vector<std::pair<double, double>> simplex_grid(double step) {
  std::vector<std::pair<double, double>> pts;
  for (double a : unit_grid(step))
    for (double b : unit_grid(step))
      if (a + b <= 1.0 + 1e-9) pts.emplace_back(a, b);
  return pts;
}

CsvTable grid_sweep(std::vector<std::string> header, const std::vector<std::pair<double, double>>& pts,
                    const std::function<std::vector<double>(double, double)>& row_fn) {
  CsvTable t{std::move(header), std::vector<std::vector<double>>(pts.size())};
  parallel_for(pts.size(), [&](std::size_t i) {
    auto vals = row_fn(pts[i].first, pts[i].second);
    vals.insert(vals.begin(), {pts[i].first, pts[i].second});
    t.rows[i] = std::move(vals);
  });
  return t;
}

CsvTable sweep_fourw(const QnnParameters& p, const Schedule& sched, const UnitConvention& u, double step) {
  require_qubits(p, 4, "fourw");
  const int n = p.n_qubits;
  const std::vector<QubitSubset> pairs{{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};
  std::vector<std::string> header{"alpha", "beta"};
  for (auto s : pairs) header.push_back(output_label(s));
  for (auto s : pairs) header.push_back("tau_" + s.label());
  return grid_sweep(header, square_grid(step), [&](double a, double b) {
    const auto psi = basis_combo(4, {{"0001", a}, {"0010", b}, {"0100", 1.0}, {"1000", 1.0}}, n);
    const DensityMatrix rho(psi);
    const auto w = evaluate(rho, p, sched, u);
    std::vector<double> row;
    for (auto s : pairs) row.push_back(w.at(s));
    for (auto s : pairs) row.push_back(pairwise_tangle(rho, s.qubits()[0], s.qubits()[1]));
    return row;
  });
}

CsvTable sweep_ghzbell(const QnnParameters& p, const Schedule& sched, const UnitConvention& u, double step) {
  require_qubits(p, 3, "ghzbell");
  const int n = p.n_qubits;
  return grid_sweep({"alpha", "beta", "O_AB", "O_ABC", "tau_AB", "tau3"}, square_grid(step), [&](double a, double b) {
    const auto psi3 = basis_combo(3, {{"110", a}, {"111", b}, {"000", 1.0}}, 3);
    const DensityMatrix rho(pad_with_zeros(psi3, n - 3));
    const auto w = evaluate(rho, p, sched, u);
    return std::vector<double>{w.at({0, 1}), w.at({0, 1, 2}), pairwise_tangle(rho, 0, 1), residual_3tangle(psi3)};
  });
}

CsvTable sweep_wtangle(const QnnParameters& p, const Schedule& sched, const UnitConvention& u, double step) {
  require_qubits(p, 3, "wtangle");
  const int n = p.n_qubits;
  return grid_sweep({"beta", "gamma", "O_AB", "O_AC", "O_ABC", "tau_AB", "tau_AC", "tau3"}, square_grid(step),
                    [&](double b, double g) {
                      const auto psi3 = basis_combo(3, {{"100", 1.0}, {"010", b}, {"001", g}}, 3);
                      const DensityMatrix rho(pad_with_zeros(psi3, n - 3));
                      const auto w = evaluate(rho, p, sched, u);
                      return std::vector<double>{w.at({0, 1}), w.at({0, 2}), w.at({0, 1, 2}),
                                                 pairwise_tangle(rho, 0, 1), pairwise_tangle(rho, 0, 2),
                                                 residual_3tangle(psi3)};
                    });
}

// Header and row tail shared by wmix/wsup: every output, then the mean
// output of each correlator order.
std::vector<std::string> order_header(int n) {
  std::vector<std::string> h{"alpha", "beta"};
  for (auto s : canonical_subsets(n)) h.push_back(output_label(s));
  for (int k = 2; k <= n; ++k) h.push_back("mean_order_" + std::to_string(k));
  return h;
}

std::vector<double> order_row(const WitnessVector& w) {
  std::vector<double> row = w.values;
  const auto& subsets = canonical_subsets(w.n_qubits);
  for (int k = 2; k <= w.n_qubits; ++k) {
    double s = 0.0;
    int c = 0;
    for (std::size_t i = 0; i < subsets.size(); ++i)
      if (subsets[i].size() == k) {
        s += w.values[i];
        ++c;
      }
    row.push_back(s / c);
  }
  return row;
}

std::vector<int> all_plus(int n) { return std::vector<int>(static_cast<std::size_t>(n), 1); }

CsvTable sweep_wmix(const QnnParameters& p, const Schedule& sched, const UnitConvention& u, double step) {
  require_qubits(p, 3, "wmix");
  const int n = p.n_qubits;
  const auto all = QubitSubset::all(n);
  const DensityMatrix g(ghz(all, n)), w(w_state(all, all_plus(n), false, n)), wf(w_state(all, all_plus(n), true, n));
  return grid_sweep(order_header(n), simplex_grid(step), [&](double a, double b) {
    const double c = std::max(0.0, 1.0 - a - b);
    const double total = a + b + c;
    const auto rho = mix({{a / total, g}, {b / total, w}, {c / total, wf}});
    return order_row(evaluate(rho, p, sched, u));
  });
}

CsvTable sweep_wsup(const QnnParameters& p, const Schedule& sched, const UnitConvention& u, double step) {
  require_qubits(p, 3, "wsup");
  const int n = p.n_qubits;
  const auto all = QubitSubset::all(n);
  const auto g = ghz(all, n), w = w_state(all, all_plus(n), false, n), wf = w_state(all, all_plus(n), true, n);
  return grid_sweep(order_header(n), simplex_grid(step), [&](double a, double b) {
    const double c = std::max(0.0, 1.0 - a - b);
    const DensityMatrix rho(superpose(std::vector<std::pair<double, PureState>>{{a, g}, {b, w}, {c, wf}}));
    return order_row(evaluate(rho, p, sched, u));
  });
}

}  // namespace

CsvTable run_sweep(std::string_view figure, const QnnParameters& params, const Schedule& sched,
                   const UnitConvention& u, const SweepOptions& opts) {
  params.validate();
  unit_grid(opts.grid_step);
  if (figure == "wvsk") return sweep_wvsk(params, sched, u);
  if (figure == "fourw") return sweep_fourw(params, sched, u, opts.grid_step);
  if (figure == "ghzbell") return sweep_ghzbell(params, sched, u, opts.grid_step);
  if (figure == "wtangle") return sweep_wtangle(params, sched, u, opts.grid_step);
  if (figure == "wmix") return sweep_wmix(params, sched, u, opts.grid_step);
  if (figure == "wsup") return sweep_wsup(params, sched, u, opts.grid_step);
  throw std::invalid_argument("unknown sweep '" + std::string(figure) + "'");
}

}  // namespace qnnw
