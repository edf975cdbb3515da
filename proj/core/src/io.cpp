#include "qnnw/io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <vector>

namespace qnnw {

namespace {

std::vector<std::string> split_ws(std::string_view line) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    std::size_t j = i;
    while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
    if (j > i) out.emplace_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

std::string_view strip_comment(std::string_view line) {
  const auto pos = line.find('#');
  return pos == std::string_view::npos ? line : line.substr(0, pos);
}

double parse_double(const std::string& tok, int line) {
  double v = 0.0;
  const char* first = tok.data();
  if (!tok.empty() && tok[0] == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, tok.data() + tok.size(), v);
  if (ec != std::errc() || ptr != tok.data() + tok.size()) throw ParseError(line, "expected a number, got '" + tok + "'");
  return v;
}

int qubit_from_letter(char c, int line) {
  if (c < 'A' || c > 'Z') throw ParseError(line, std::string("bad qubit letter '") + c + "'");
  return c - 'A';
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

struct RowLabel {
  enum Kind { K, Eps, Zeta } kind;
  int a;
  int b;
};

RowLabel parse_label(const std::string& label, int line) {
  std::string rest;
  auto take = [&](std::initializer_list<std::string_view> prefixes) {
    for (const auto prefix : prefixes)
      if (label.rfind(prefix, 0) == 0) {
        rest = label.substr(prefix.size());
        return true;
      }
    return false;
  };
  if (take({"K_"}) && rest.size() == 1) return {RowLabel::K, qubit_from_letter(rest[0], line), -1};
  if (take({"eps_", "epsilon_", "\u03b5_"}) && rest.size() == 1)
    return {RowLabel::Eps, qubit_from_letter(rest[0], line), -1};
  if (take({"zeta_", "\u03b6_"}) && rest.size() == 2) {
    const int a = qubit_from_letter(rest[0], line), b = qubit_from_letter(rest[1], line);
    if (a >= b) throw ParseError(line, "coupling label '" + label + "' must name qubits in ascending order");
    return {RowLabel::Zeta, a, b};
  }
  throw ParseError(line, "unknown parameter label '" + label + "'");
}

CheckpointMeta parse_meta(const std::vector<std::string>& toks, int line) {
  CheckpointMeta meta;
  meta.schedule.n_chunks = -1;  // taken from the table unless given
  bool factor_given = false;
  for (std::size_t i = 1; i < toks.size(); ++i) {
    const auto eq = toks[i].find('=');
    if (eq == std::string::npos) throw ParseError(line, "metadata entry '" + toks[i] + "' is not key=value");
    const std::string key = toks[i].substr(0, eq), val = toks[i].substr(eq + 1);
    if (key == "stage") meta.stage = static_cast<int>(parse_double(val, line));
    else if (key == "convention") meta.convention = val;
    else if (key == "angular_factor") { meta.angular_factor = parse_double(val, line); factor_given = true; }
    else if (key == "ordered_pairs") meta.ordered_pair_sum = parse_double(val, line) != 0.0;
    else if (key == "t_final") meta.schedule.t_final = parse_double(val, line);
    else if (key == "chunks") meta.schedule.n_chunks = static_cast<int>(parse_double(val, line));
    else if (key == "dt") meta.schedule.dt = parse_double(val, line);
    else throw ParseError(line, "unknown metadata key '" + key + "'");
  }
  if (!factor_given) {
    if (meta.convention == "angular") meta.angular_factor = UnitConvention::kAngular;
    else if (meta.convention == "linear") meta.angular_factor = UnitConvention::kLinear;
    else throw ParseError(line, "unknown convention '" + meta.convention + "'");
  }
  return meta;
}

}  // namespace

ParameterFile parse_parameter_file(std::string_view text) {
  ParameterFile out;
  struct Row {
    RowLabel label;
    std::vector<double> values;
    int line;
  };
  std::vector<Row> rows;
  std::istringstream in{std::string(text)};
  std::string raw;
  int line_no = 0;
  int n_chunks = -1;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string_view content = strip_comment(raw);
    const auto toks = split_ws(content);
    if (toks.empty()) continue;
    if (toks[0] == "@meta") {
      out.meta = parse_meta(toks, line_no);
      continue;
    }
    if (toks[0] == "t") {
      for (std::size_t i = 1; i < toks.size(); ++i)
        if (parse_double(toks[i], line_no) != static_cast<double>(i))
          throw ParseError(line_no, "time-slice header must count 1, 2, ...");
      if (n_chunks >= 0 && n_chunks != static_cast<int>(toks.size()) - 1)
        throw ParseError(line_no, "header column count differs from data rows");
      n_chunks = static_cast<int>(toks.size()) - 1;
      continue;
    }
    Row row{parse_label(toks[0], line_no), {}, line_no};
    for (std::size_t i = 1; i < toks.size(); ++i) row.values.push_back(parse_double(toks[i], line_no));
    if (row.values.empty()) throw ParseError(line_no, "parameter row has no values");
    if (n_chunks >= 0 && static_cast<int>(row.values.size()) != n_chunks)
      throw ParseError(line_no, "expected " + std::to_string(n_chunks) + " chunk columns, got " +
                                    std::to_string(row.values.size()));
    n_chunks = static_cast<int>(row.values.size());
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw ParseError(line_no, "no parameter rows");

  int n = 0;
  for (const auto& r : rows)
    if (r.label.kind == RowLabel::K) ++n;
  if (n < 1) throw ParseError(line_no, "no tunneling rows");
  out.params = QnnParameters::zeros(n, n_chunks);
  std::map<std::tuple<int, int, int>, int> seen;
  for (const auto& r : rows) {
    const auto key = std::make_tuple(static_cast<int>(r.label.kind), r.label.a, r.label.b);
    if (seen.count(key)) throw ParseError(r.line, "duplicate parameter row");
    seen[key] = r.line;
    if (r.label.a >= n || r.label.b >= n) throw ParseError(r.line, "row names a qubit beyond the " + std::to_string(n) + "-qubit register");
    for (int c = 0; c < n_chunks; ++c) {
      auto& ch = out.params.chunks[c];
      switch (r.label.kind) {
        case RowLabel::K: ch.k[r.label.a] = r.values[c]; break;
        case RowLabel::Eps: ch.eps[r.label.a] = r.values[c]; break;
        case RowLabel::Zeta: ch.zeta_at(r.label.a, r.label.b) = r.values[c]; break;
      }
    }
  }
  const std::size_t expected = 2 * static_cast<std::size_t>(n) + pair_count(n);
  if (rows.size() != expected)
    throw ParseError(line_no, "expected " + std::to_string(expected) + " parameter rows for " + std::to_string(n) +
                                  " qubits, got " + std::to_string(rows.size()));
  if (out.meta && out.meta->schedule.n_chunks < 0) out.meta->schedule.n_chunks = n_chunks;
  if (out.meta && out.meta->schedule.n_chunks != n_chunks)
    throw ParseError(line_no, "metadata chunk count differs from the table");
  return out;
}

std::string format_parameter_file(const ParameterFile& file) {
  const auto& p = file.params;
  p.validate();
  std::ostringstream os;
  os << "# qnnw parameters, MHz; one row per parameter, one column per time chunk\n";
  if (file.meta) {
    const auto& m = *file.meta;
    os << "@meta stage=" << m.stage << " convention=" << m.convention
       << " angular_factor=" << format_double(m.angular_factor) << " ordered_pairs=" << (m.ordered_pair_sum ? 1 : 0)
       << " t_final=" << format_double(m.schedule.t_final) << " chunks=" << m.schedule.n_chunks
       << " dt=" << format_double(m.schedule.dt) << '\n';
  }
  os << 't';
  for (int c = 1; c <= p.n_chunks(); ++c) os << ' ' << c;
  os << '\n';
  const int n = p.n_qubits;
  auto row = [&](const std::string& label, auto get) {
    os << label;
    for (const auto& ch : p.chunks) os << ' ' << format_double(get(ch));
    os << '\n';
  };
  for (int a = 0; a < n; ++a) row(std::string("K_") + char('A' + a), [a](const ChunkParams& c) { return c.k[a]; });
  for (int a = 0; a < n; ++a) row(std::string("eps_") + char('A' + a), [a](const ChunkParams& c) { return c.eps[a]; });
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      row(std::string("zeta_") + char('A' + a) + char('A' + b),
          [a, b](const ChunkParams& c) { return c.zeta_at(a, b); });
  return os.str();
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

ParameterFile read_parameter_file(const std::filesystem::path& path) {
  try {
    return parse_parameter_file(read_text_file(path));
  } catch (const ParseError& e) {
    throw ParseError(e.line(), path.string() + ": " + std::string(e.what()).substr(std::string(e.what()).find(": ") + 2));
  }
}

void write_parameter_file(const std::filesystem::path& path, const ParameterFile& file) {
  write_text_file(path, format_parameter_file(file));
}

StateSpec parse_state_spec(std::string_view text) {
  StateSpec spec;
  std::istringstream in{std::string(text)};
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto toks = split_ws(strip_comment(raw));
    if (toks.empty()) continue;
    if (toks.size() < 2 || toks.size() > 3) throw ParseError(line_no, "expected '<bits> <re> [<im>]'");
    const auto& bits = toks[0];
    if (bits.find_first_not_of("01") != std::string::npos) throw ParseError(line_no, "bitstring '" + bits + "' is not binary");
    if (spec.n_qubits == 0) spec.n_qubits = static_cast<int>(bits.size());
    else if (static_cast<int>(bits.size()) != spec.n_qubits)
      throw ParseError(line_no, "bitstring length differs from earlier lines");
    const double re = parse_double(toks[1], line_no);
    const double im = toks.size() == 3 ? parse_double(toks[2], line_no) : 0.0;
    spec.terms.push_back({bits, Complex(re, im)});
  }
  if (spec.terms.empty()) throw ParseError(line_no, "state spec has no terms");
  return spec;
}

StateSpec read_state_spec(const std::filesystem::path& path) { return parse_state_spec(read_text_file(path)); }

}  // namespace qnnw
