// Copyright 2026 The qillum Authors
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

#include "qillum/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <exception>
#include <fstream>
#include <iterator>
#include <mutex>
#include <sstream>
#include <thread>

#include "json.hpp"

#include "qillum/chernoff.hpp"
#include "qillum/error.hpp"

namespace qillum {

namespace {

using nlohmann::json;

constexpr std::pair<Quantity, std::string_view> kQuantityNames[] = {
    {Quantity::qb_exact, "qb_exact"},
    {Quantity::qb_exponent, "qb_exponent"},
    {Quantity::qc_exact, "qc_exact"},
    {Quantity::qc_exponent, "qc_exponent"},
    {Quantity::s_star, "s_star"},
    {Quantity::qb_asymptotic, "qb_asymptotic"},
    {Quantity::qb_asymptotic_exponent, "qb_asymptotic_exponent"},
    {Quantity::coherent, "coherent"},
    {Quantity::coherent_exponent, "coherent_exponent"},
    {Quantity::gamma, "gamma"},
    {Quantity::advantage_db, "advantage_db"},
    {Quantity::log_negativity, "log_negativity"},
    {Quantity::signal_photons, "signal_photons"},
    {Quantity::r1_star, "r1_star"},
    {Quantity::r1_star_residual, "r1_star_residual"},
};

constexpr std::pair<Axis, std::string_view> kAxisNames[] = {
    {Axis::ns, "ns"}, {Axis::nb, "nb"}, {Axis::kappa, "kappa"}, {Axis::r1, "r1"},
    {Axis::r2, "r2"}, {Axis::r, "r"},   {Axis::m, "m"},
};

double parse_double(std::string_view text, std::string_view what) {
  const std::string trimmed(text);
  double value = 0;
  const auto* first = trimmed.data();
  const auto* last = first + trimmed.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || trimmed.empty()) {
    throw ValidationError(std::string(what) + ": cannot parse '" + trimmed + "' as a number");
  }
  return value;
}

void set_axis(ScenarioParams& p, Axis axis, double value) {
  switch (axis) {
    case Axis::ns:
      p.ns = value;
      return;
    case Axis::nb:
      p.nb = value;
      return;
    case Axis::kappa:
      p.kappa = value;
      return;
    case Axis::r1:
      p.r1 = value;
      return;
    case Axis::r2:
      p.r2 = value;
      return;
    case Axis::r:
      p.r = value;
      return;
    case Axis::m:
      if (!(value >= 1) || value != std::floor(value) || value > 1e18) {
        throw ValidationError("axis m: values must be integers >= 1");
      }
      p.m = static_cast<std::uint64_t>(value);
      return;
  }
}

bool needs_pair(Quantity q) {
  switch (q) {
    case Quantity::qb_exact:
    case Quantity::qb_exponent:
    case Quantity::qc_exact:
    case Quantity::qc_exponent:
    case Quantity::s_star:
      return true;
    default:
      return false;
  }
}

BoundResult asymptotic_bound(const ScenarioParams& p) {
  switch (p.kind) {
    case ProbeKind::tmsv:
      return tmsv_qb_asymptotic(p);
    case ProbeKind::tss:
      return tss_qb_asymptotic(p).bound;
    case ProbeKind::tms:
      return tms_qb_asymptotic(p).bound;
  }
  throw ValidationError("unknown probe kind");
}

AdvantageResult advantage(const ScenarioParams& p) {
  switch (p.kind) {
    case ProbeKind::tmsv:
      return gamma1(p.ns, 0);
    case ProbeKind::tss: {
      const Real sh = std::sinh(p.r1);
      return gamma1(p.ns, sh * sh);
    }
    case ProbeKind::tms:
      return gamma2(p.ns, p.r);
  }
  throw ValidationError("unknown probe kind");
}

std::string suffixed(std::string_view column, double ns) { return std::string(column) + "_ns" + format_number(ns); }

// Joins per-N_S tables that share the same axis column.
CsvTable join_by_ns(std::string_view axis_name, const std::vector<double>& axis_values,
                    const std::vector<double>& ns_values, const std::vector<CsvTable>& parts) {
  CsvTable out;
  out.header.emplace_back(axis_name);
  for (std::size_t k = 0; k < parts.size(); ++k) {
    for (std::size_t c = 1; c < parts[k].header.size(); ++c) {
      out.header.push_back(suffixed(parts[k].header[c], ns_values[k]));
    }
    out.warnings.insert(out.warnings.end(), parts[k].warnings.begin(), parts[k].warnings.end());
  }
  for (std::size_t row = 0; row < axis_values.size(); ++row) {
    std::vector<std::optional<double>> cells{axis_values[row]};
    for (const auto& part : parts) {
      cells.insert(cells.end(), std::next(part.rows[row].begin()), part.rows[row].end());
    }
    out.rows.push_back(std::move(cells));
  }
  return out;
}

template <class T>
T required_field(const json& obj, const char* key, const char* where) {
  if (!obj.contains(key)) {
    throw ValidationError(std::string(where) + ": missing field '" + key + "'");
  }
  try {
    return obj.at(key).get<T>();
  } catch (const json::exception&) {
    throw ValidationError(std::string(where) + ": field '" + key + "' has the wrong type");
  }
}

ScenarioParams scenario_from_json(const json& obj) {
  if (!obj.is_object()) {
    throw ValidationError("scenario: must be an object");
  }
  static const std::vector<std::string> allowed = {"kind", "ns", "nb", "kappa", "r1", "r2", "r", "m"};
  for (const auto& [key, value] : obj.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      throw ValidationError("scenario: unknown field '" + key + "'");
    }
    if (key != "kind" && !value.is_number()) {
      throw ValidationError("scenario." + key + ": must be a number");
    }
  }
  ScenarioParams p;
  p.kind = parse_probe_kind(required_field<std::string>(obj, "kind", "scenario"));
  auto read = [&](const char* key, Real& dst) {
    if (obj.contains(key)) dst = obj.at(key).get<double>();
  };
  read("ns", p.ns);
  read("nb", p.nb);
  read("kappa", p.kappa);
  read("r1", p.r1);
  read("r2", p.r2);
  read("r", p.r);
  if (obj.contains("m")) {
    const auto& m = obj.at("m");
    if (!m.is_number_integer() || m.get<std::int64_t>() < 1) {
      throw ValidationError("scenario.m: must be an integer >= 1");
    }
    p.m = m.get<std::uint64_t>();
  }
  return p;
}

}  // namespace

std::string_view to_string(Quantity q) {
  for (const auto& [value, name] : kQuantityNames) {
    if (value == q) return name;
  }
  return "unknown";
}

Quantity parse_quantity(std::string_view text) {
  for (const auto& [value, name] : kQuantityNames) {
    if (name == text) return value;
  }
  throw ValidationError("unknown output quantity '" + std::string(text) + "'");
}

std::string_view to_string(Axis axis) {
  for (const auto& [value, name] : kAxisNames) {
    if (value == axis) return name;
  }
  return "unknown";
}

Axis parse_axis(std::string_view text) {
  for (const auto& [value, name] : kAxisNames) {
    if (name == text) return value;
  }
  throw ValidationError("unknown sweep axis '" + std::string(text) + "' (expected ns, nb, kappa, r1, r2, r or m)");
}

std::vector<double> make_grid(double start, double stop, int count, Spacing spacing) {
  if (count < 2) {
    throw ValidationError("grid count must be >= 2");
  }
  if (!std::isfinite(start) || !std::isfinite(stop) || start == stop) {
    throw ValidationError("grid needs finite, distinct start and stop");
  }
  if (spacing == Spacing::log && !(start > 0 && stop > 0)) {
    throw ValidationError("log grid needs start > 0 and stop > 0");
  }
  std::vector<double> values(static_cast<std::size_t>(count));
  const double lo = spacing == Spacing::log ? std::log(start) : start;
  const double hi = spacing == Spacing::log ? std::log(stop) : stop;
  for (int k = 0; k < count; ++k) {
    const double t = lo + (hi - lo) * k / (count - 1);
    values[static_cast<std::size_t>(k)] = spacing == Spacing::log ? std::exp(t) : t;
  }
  // Pin the endpoints exactly.
  values.front() = start;
  values.back() = stop;
  return values;
}

std::vector<double> parse_grid(std::string_view text) {
  std::vector<std::string_view> parts;
  const char sep = text.find(':') != std::string_view::npos ? ':' : ',';
  std::size_t begin = 0;
  while (true) {
    const auto end = text.find(sep, begin);
    parts.push_back(text.substr(begin, end == std::string_view::npos ? std::string_view::npos : end - begin));
    if (end == std::string_view::npos) break;
    begin = end + 1;
  }
  if (sep == ',') {
    std::vector<double> values;
    for (auto part : parts) values.push_back(parse_double(part, "grid value"));
    return values;
  }
  if (parts.size() != 3 && parts.size() != 4) {
    throw ValidationError("grid '" + std::string(text) + "': expected start:stop:count[:log]");
  }
  Spacing spacing = Spacing::linear;
  if (parts.size() == 4) {
    if (parts[3] == "log") {
      spacing = Spacing::log;
    } else if (parts[3] != "linear") {
      throw ValidationError("grid spacing must be 'linear' or 'log'");
    }
  }
  const double count = parse_double(parts[2], "grid count");
  if (count != std::floor(count) || count > 1e7) {
    throw ValidationError("grid count must be an integer");
  }
  return make_grid(parse_double(parts[0], "grid start"), parse_double(parts[1], "grid stop"), static_cast<int>(count),
                   spacing);
}

void SweepSpec::validate() const {
  if (values.size() < 2) {
    throw ValidationError("values: need at least 2 grid points");
  }
  const bool increasing = values[1] > values[0];
  for (std::size_t k = 1; k < values.size(); ++k) {
    if (!(increasing ? values[k] > values[k - 1] : values[k] < values[k - 1])) {
      throw ValidationError("values: grid must be strictly monotone");
    }
  }
  if (outputs.empty()) {
    throw ValidationError("outputs: at least one quantity is required");
  }
  if (threads < 1) {
    throw ValidationError("threads: must be >= 1");
  }
  for (double v : values) {
    ScenarioParams p = scenario;
    set_axis(p, axis, v);
    p.validate();
  }
}

SweepSpec SweepSpec::from_json_text(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) {
    throw ValidationError("config: top level must be an object");
  }
  static const std::vector<std::string> allowed = {"scenario", "axis",  "values",  "start",  "stop",
                                                   "count",    "spacing", "outputs", "threads"};
  for (const auto& [key, value] : doc.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      throw ValidationError("config: unknown field '" + key + "'");
    }
  }
  SweepSpec spec;
  spec.scenario = scenario_from_json(required_field<json>(doc, "scenario", "config"));
  spec.axis = parse_axis(required_field<std::string>(doc, "axis", "config"));

  const bool has_values = doc.contains("values");
  const bool has_grid = doc.contains("start") || doc.contains("stop") || doc.contains("count");
  if (has_values == has_grid) {
    throw ValidationError("config: give either 'values' or 'start'/'stop'/'count'");
  }
  if (has_values) {
    spec.values = required_field<std::vector<double>>(doc, "values", "config");
  } else {
    const auto spacing_name = doc.contains("spacing") ? required_field<std::string>(doc, "spacing", "config") : "linear";
    if (spacing_name != "linear" && spacing_name != "log") {
      throw ValidationError("config: field 'spacing' must be 'linear' or 'log'");
    }
    spec.values = make_grid(required_field<double>(doc, "start", "config"), required_field<double>(doc, "stop", "config"),
                            required_field<int>(doc, "count", "config"),
                            spacing_name == "log" ? Spacing::log : Spacing::linear);
  }
  for (const auto& name : required_field<std::vector<std::string>>(doc, "outputs", "config")) {
    spec.outputs.push_back(parse_quantity(name));
  }
  if (doc.contains("threads")) {
    const int threads = required_field<int>(doc, "threads", "config");
    if (threads < 1) {
      throw ValidationError("config: field 'threads' must be >= 1");
    }
    spec.threads = static_cast<unsigned>(threads);
  }
  spec.validate();
  return spec;
}

SweepSpec SweepSpec::from_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw ValidationError("cannot open config file '" + path.string() + "'");
  }
  std::stringstream buffer;
  buffer << in.rdbuf();
  return from_json_text(buffer.str());
}

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (x == 0) return "0";
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x, std::chars_format::general, 12);
  if (ec != std::errc()) {
    throw NumericalError("number formatting failed");
  }
  return std::string(buf, ptr);
}

std::string CsvTable::to_csv() const {
  std::string out;
  for (std::size_t c = 0; c < header.size(); ++c) {
    if (c) out += ',';
    out += header[c];
  }
  out += '\n';
  for (const auto& row : rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out += ',';
      if (row[c]) out += format_number(*row[c]);
    }
    out += '\n';
  }
  return out;
}

std::vector<std::optional<double>> evaluate_point(const ScenarioParams& params, const std::vector<Quantity>& outputs,
                                                  std::vector<std::string>* warnings) {
  params.validate();
  std::optional<HypothesisPair> pair;
  if (std::any_of(outputs.begin(), outputs.end(), needs_pair)) {
    pair = build_hypotheses(params);
  }
  std::optional<BoundResult> qb;
  std::optional<BoundResult> qc;
  std::optional<std::optional<Real>> r1_root;
  auto root = [&]() -> std::optional<Real> {
    if (!r1_root) {
      try {
        r1_root = critical_r1(params.ns);
      } catch (const NumericalError& e) {
        if (warnings) warnings->push_back("N_S=" + format_number(static_cast<double>(params.ns)) + ": " + e.what());
        r1_root = std::optional<Real>{};
      }
    }
    return *r1_root;
  };

  std::vector<std::optional<double>> cells;
  for (Quantity q : outputs) {
    std::optional<Real> v;
    switch (q) {
      case Quantity::qb_exact:
      case Quantity::qb_exponent:
        if (!qb) qb = qb_bound(*pair, params.m);
        v = q == Quantity::qb_exact ? qb->value : qb->total_exponent();
        break;
      case Quantity::qc_exact:
      case Quantity::qc_exponent:
      case Quantity::s_star:
        if (!qc) qc = qc_bound(*pair, params.m);
        v = q == Quantity::qc_exact ? qc->value : q == Quantity::qc_exponent ? qc->total_exponent() : qc->s_used;
        break;
      case Quantity::qb_asymptotic:
      case Quantity::qb_asymptotic_exponent:
        if (params.nb > 0) {
          const auto b = asymptotic_bound(params);
          v = q == Quantity::qb_asymptotic ? b.value : b.total_exponent();
        }
        break;
      case Quantity::coherent:
      case Quantity::coherent_exponent: {
        const auto b = coherent_qb_bound(params.ns, params.nb, params.kappa, params.m);
        v = q == Quantity::coherent ? b.value : b.total_exponent();
        break;
      }
      case Quantity::gamma:
        v = advantage(params).gamma;
        break;
      case Quantity::advantage_db:
        v = advantage(params).decibels;
        break;
      case Quantity::log_negativity:
        v = log_negativity(build_probe(params).cov);
        break;
      case Quantity::signal_photons:
        v = build_probe(params).photons.signal;
        break;
      case Quantity::r1_star:
        v = root();
        break;
      case Quantity::r1_star_residual:
        if (const auto r1 = root()) {
          const Real sh = std::sinh(*r1);
          v = std::abs(gamma1(params.ns, sh * sh).gamma - 1);
        }
        break;
    }
    cells.push_back(v ? std::optional<double>(static_cast<double>(*v)) : std::nullopt);
  }
  return cells;
}

CsvTable run_sweep(const SweepSpec& spec) {
  spec.validate();
  const std::size_t n = spec.values.size();
  std::vector<std::vector<std::optional<double>>> rows(n);
  std::vector<std::vector<std::string>> point_warnings(n);
  std::vector<std::exception_ptr> errors(n);
  std::atomic<std::size_t> next{0};

  auto worker = [&]() {
    for (std::size_t k = next++; k < n; k = next++) {
      try {
        ScenarioParams p = spec.scenario;
        set_axis(p, spec.axis, spec.values[k]);
        rows[k] = evaluate_point(p, spec.outputs, &point_warnings[k]);
        rows[k].insert(rows[k].begin(), spec.values[k]);
      } catch (...) {
        errors[k] = std::current_exception();
      }
    }
  };
  const unsigned threads = std::min<unsigned>(spec.threads, static_cast<unsigned>(n));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  // Report the first failure in grid order so errors are deterministic too.
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  CsvTable table;
  table.header.emplace_back(to_string(spec.axis));
  for (Quantity q : spec.outputs) table.header.emplace_back(to_string(q));
  table.rows = std::move(rows);
  for (auto& w : point_warnings) {
    table.warnings.insert(table.warnings.end(), w.begin(), w.end());
  }
  return table;
}

std::vector<double> default_squeeze_grid() { return make_grid(0, 3, 301, Spacing::linear); }
std::vector<double> default_ns_grid() { return make_grid(0.01, 1, 101, Spacing::log); }
std::vector<double> default_ns_values() { return {0.01, 0.1, 1}; }

CsvTable fig1a_table(const std::vector<double>& ns_values, const std::vector<double>& r1_grid, unsigned threads) {
  if (ns_values.empty()) {
    throw ValidationError("fig1a: at least one N_S value is required");
  }
  std::vector<CsvTable> parts;
  for (double ns : ns_values) {
    SweepSpec spec;
    spec.scenario.kind = ProbeKind::tss;
    spec.scenario.ns = ns;
    spec.axis = Axis::r1;
    spec.values = r1_grid;
    spec.outputs = {Quantity::gamma, Quantity::advantage_db};
    spec.threads = threads;
    parts.push_back(run_sweep(spec));
  }
  return join_by_ns("r1", r1_grid, ns_values, parts);
}

CsvTable fig1b_table(const std::vector<double>& ns_grid, unsigned threads) {
  SweepSpec spec;
  spec.scenario.kind = ProbeKind::tss;
  spec.axis = Axis::ns;
  spec.values = ns_grid;
  spec.outputs = {Quantity::r1_star, Quantity::r1_star_residual};
  spec.threads = threads;
  return run_sweep(spec);
}

CsvTable fig2_table(const std::vector<double>& ns_values, const std::vector<double>& r_grid, unsigned threads) {
  if (ns_values.empty()) {
    throw ValidationError("fig2: at least one N_S value is required");
  }
  std::vector<CsvTable> parts;
  for (double ns : ns_values) {
    SweepSpec spec;
    spec.scenario.kind = ProbeKind::tms;
    spec.scenario.ns = ns;
    spec.axis = Axis::r;
    spec.values = r_grid;
    spec.outputs = {Quantity::gamma, Quantity::advantage_db};
    spec.threads = threads;
    parts.push_back(run_sweep(spec));
  }
  return join_by_ns("r", r_grid, ns_values, parts);
}

CsvTable bounds_table(const ScenarioParams& params) {
  const std::vector<Quantity> outputs = {
      Quantity::qb_exact,      Quantity::qb_exponent,       Quantity::qc_exact,
      Quantity::qc_exponent,   Quantity::s_star,            Quantity::qb_asymptotic,
      Quantity::qb_asymptotic_exponent, Quantity::coherent, Quantity::coherent_exponent,
      Quantity::gamma,         Quantity::advantage_db,      Quantity::log_negativity,
  };
  CsvTable table;
  table.header = {"ns", "nb", "kappa", "m", "r1", "r2", "r"};
  for (Quantity q : outputs) table.header.emplace_back(to_string(q));
  std::vector<std::optional<double>> row = {static_cast<double>(params.ns),
                                            static_cast<double>(params.nb),
                                            static_cast<double>(params.kappa),
                                            static_cast<double>(params.m),
                                            static_cast<double>(params.r1),
                                            static_cast<double>(params.r2),
                                            static_cast<double>(params.r)};
  const auto cells = evaluate_point(params, outputs, &table.warnings);
  row.insert(row.end(), cells.begin(), cells.end());
  table.rows.push_back(std::move(row));
  return table;
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw ValidationError("cannot open output file '" + path.string() + "'");
  }
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) {
    throw ValidationError("failed writing output file '" + path.string() + "'");
  }
}

}  // namespace qillum
