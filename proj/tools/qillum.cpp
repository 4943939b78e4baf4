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

// qillum: error-probability bounds for Gaussian quantum illumination.
//
// Exit status: 0 success, 1 usage or validation error, 2 numerical failure,
// 3 request outside the oracle regime.

#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "qillum/error.hpp"
#include "qillum/sweep.hpp"
#include "qillum/verify.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitNumerical = 2;
constexpr int kExitRegime = 3;

struct ScenarioFlags {
  std::string kind;
  double ns = 0;
  double nb = 0;
  double kappa = 0;
  std::uint64_t m = 1;
  double r1 = 0;
  double r2 = 0;
  double r = 0;

  qillum::ScenarioParams params() const {
    qillum::ScenarioParams p;
    p.kind = qillum::parse_probe_kind(kind);
    p.ns = ns;
    p.nb = nb;
    p.kappa = kappa;
    p.m = m;
    p.r1 = r1;
    p.r2 = r2;
    p.r = r;
    p.validate();
    return p;
  }
};

void emit(const qillum::CsvTable& table, const std::string& out_path) {
  for (const auto& w : table.warnings) {
    std::cerr << "warning: " << w << '\n';
  }
  const std::string csv = table.to_csv();
  if (out_path.empty() || out_path == "-") {
    std::cout << csv;
  } else {
    qillum::write_text_file(out_path, csv);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Error-probability bounds for Gaussian quantum illumination with squeezed probes", "qillum"};
  app.require_subcommand(1);

  ScenarioFlags flags;
  std::string out_path;
  unsigned threads = 1;

  auto* bounds = app.add_subcommand("bounds", "Exact, optimized and asymptotic bounds at one point");
  bounds->add_option("--kind", flags.kind, "Probe: tmsv, tss or tms")->required();
  bounds->add_option("--ns", flags.ns, "Mean signal photon number of the seed TMSV")->required();
  bounds->add_option("--nb", flags.nb, "Background mean photon number")->required();
  bounds->add_option("--kappa", flags.kappa, "Target reflectivity in [0, 1)")->required();
  bounds->add_option("--m", flags.m, "Number of copies")->capture_default_str();
  bounds->add_option("--r1", flags.r1, "TSS signal squeeze");
  bounds->add_option("--r2", flags.r2, "TSS idler squeeze");
  bounds->add_option("--r", flags.r, "TMS squeeze");
  bounds->add_option("--out", out_path, "Output CSV path (default: standard output)");

  std::string ns_list = "0.01,0.1,1";
  std::string squeeze_grid = "0:3:301";
  std::string ns_grid = "0.01:1:101:log";

  auto* fig1a = app.add_subcommand("fig1a", "Gamma_1 against r1 for several N_S");
  fig1a->add_option("--ns", ns_list, "N_S values (comma list)")->capture_default_str();
  fig1a->add_option("--r1", squeeze_grid, "r1 grid, start:stop:count[:log] or comma list")->capture_default_str();
  fig1a->add_option("--out", out_path, "Output CSV path");
  fig1a->add_option("--threads", threads, "Worker threads")->capture_default_str();

  auto* fig1b = app.add_subcommand("fig1b", "Critical squeeze r1* against N_S");
  fig1b->add_option("--ns", ns_grid, "N_S grid")->capture_default_str();
  fig1b->add_option("--out", out_path, "Output CSV path");
  fig1b->add_option("--threads", threads, "Worker threads")->capture_default_str();

  auto* fig2 = app.add_subcommand("fig2", "Gamma_2 against r for several N_S");
  fig2->add_option("--ns", ns_list, "N_S values (comma list)")->capture_default_str();
  fig2->add_option("--r", squeeze_grid, "r grid")->capture_default_str();
  fig2->add_option("--out", out_path, "Output CSV path");
  fig2->add_option("--threads", threads, "Worker threads")->capture_default_str();

  std::string config_path;
  std::optional<unsigned> sweep_threads;
  auto* sweep = app.add_subcommand("sweep", "Generic sweep driven by a JSON config");
  sweep->add_option("config", config_path, "Config file")->required()->check(CLI::ExistingFile);
  sweep->add_option("--out", out_path, "Output CSV path");
  sweep->add_option("--threads", sweep_threads, "Override the config's thread count");

  std::string verify_kind;
  std::optional<double> v_ns, v_nb, v_kappa, v_r1, v_r2, v_r;
  std::string dims_text = "14,14,24";
  auto* verify = app.add_subcommand("verify-oracle", "Cross-check the Gaussian pipeline against the Fock oracle");
  verify->add_option("--kind", verify_kind, "Restrict to one probe kind");
  verify->add_option("--ns", v_ns, "N_S (default 0.1)");
  verify->add_option("--nb", v_nb, "N_B (default 0.2, at most 1)");
  verify->add_option("--kappa", v_kappa, "kappa (default 0.1)");
  verify->add_option("--r1", v_r1, "TSS signal squeeze (default 0.15)");
  verify->add_option("--r2", v_r2, "TSS idler squeeze (default 0.1)");
  verify->add_option("--r", v_r, "TMS squeeze (default 0.15)");
  verify->add_option("--dims", dims_text, "Fock dimensions S,I,E or one value for S and I")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*bounds) {
      emit(qillum::bounds_table(flags.params()), out_path);
    } else if (*fig1a) {
      emit(qillum::fig1a_table(qillum::parse_grid(ns_list), qillum::parse_grid(squeeze_grid), threads), out_path);
    } else if (*fig1b) {
      emit(qillum::fig1b_table(qillum::parse_grid(ns_grid), threads), out_path);
    } else if (*fig2) {
      emit(qillum::fig2_table(qillum::parse_grid(ns_list), qillum::parse_grid(squeeze_grid), threads), out_path);
    } else if (*sweep) {
      auto spec = qillum::SweepSpec::from_file(config_path);
      if (sweep_threads) spec.threads = *sweep_threads;
      emit(qillum::run_sweep(spec), out_path);
    } else if (*verify) {
      auto scenarios = qillum::default_oracle_scenarios();
      if (!verify_kind.empty()) {
        const auto kind = qillum::parse_probe_kind(verify_kind);
        std::erase_if(scenarios, [kind](const qillum::ScenarioParams& p) { return p.kind != kind; });
      }
      for (auto& p : scenarios) {
        if (v_ns) p.ns = *v_ns;
        if (v_nb) p.nb = *v_nb;
        if (v_kappa) p.kappa = *v_kappa;
        if (p.kind == qillum::ProbeKind::tss) {
          if (v_r1) p.r1 = *v_r1;
          if (v_r2) p.r2 = *v_r2;
        }
        if (p.kind == qillum::ProbeKind::tms && v_r) p.r = *v_r;
      }
      const auto report = qillum::verify_oracle(scenarios, qillum::parse_dims(dims_text));
      std::cout << report.to_text();
      return report.all_pass() ? kExitOk : kExitNumerical;
    }
  } catch (const qillum::RegimeError& e) {
    std::cerr << "qillum: " << e.what() << '\n';
    return kExitRegime;
  } catch (const qillum::ValidationError& e) {
    std::cerr << "qillum: " << e.what() << '\n';
    return kExitUsage;
  } catch (const qillum::Error& e) {
    std::cerr << "qillum: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const std::exception& e) {
    std::cerr << "qillum: " << e.what() << '\n';
    return kExitNumerical;
  }
  return kExitOk;
}
