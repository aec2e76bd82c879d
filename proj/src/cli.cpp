// Copyright 2026 The cpvqd Authors
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

#include "cpvqd/cli.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <functional>
#include <ostream>
#include <sstream>
#include <thread>
#include <vector>

#include "CLI11.hpp"

#include "cpvqd/errors.hpp"
#include "cpvqd/exact.hpp"
#include "cpvqd/fermion.hpp"
#include "cpvqd/lattice.hpp"
#include "cpvqd/results.hpp"
#include "cpvqd/vqd.hpp"

#ifndef CPVQD_DEFAULT_FIXTURES
#define CPVQD_DEFAULT_FIXTURES "data/fixtures"
#endif

namespace cpvqd {
namespace {

constexpr int kExitOk = 0;
constexpr int kExitConvergence = 1;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;

struct RunOptions {
  std::string mode = "reduced";
  std::optional<double> q;
  std::optional<int> parity;
  std::string sym = "charge";
  std::string alpha = "auto";
  std::optional<double> target;
  int k = 1;
  std::uint64_t seed = 0;
  double rhobeg = 0.5;
  int max_iters = 0;
  std::optional<double> ftol;
  int restarts = 2;
  int restarts_ground = 1;
  int layers = 4;
  std::string entangler = "cx";
  std::optional<double> beta;
};

struct OutputOptions {
  std::string out;
  std::string csv;
};

bool is_chemistry(const std::string& model) {
  return model == "h2" || model == "hehp" || model == "file";
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, ',')) {
    item.erase(0, item.find_first_not_of(" \t"));
    item.erase(item.find_last_not_of(" \t") + 1);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

double parse_number(const std::string& text, const std::string& what) {
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used == text.size()) return v;
  } catch (const std::exception&) {
  }
  throw ParameterError("invalid " + what + " '" + text + "'");
}

/// Accepts "q=<value>" or a bare number.
double parse_sector(const std::string& text) {
  std::string v = text;
  if (v.rfind("q=", 0) == 0) v = v.substr(2);
  return parse_number(v, "sector");
}

void add_model_options(CLI::App* sub, ModelOptions& m) {
  sub->add_option("--model", m.model, "h2, hehp, dirac, schwinger or file")
      ->check(CLI::IsMember({"h2", "hehp", "dirac", "schwinger", "file"}));
  sub->add_option("--n", m.n, "Lattice site count");
  sub->add_option("--m", m.m, "Fermion mass");
  sub->add_option("--g", m.g, "Gauge coupling");
  sub->add_option("--a", m.a, "Lattice spacing");
  sub->add_option("--boundary", m.boundary, "open or periodic (Schwinger only)")
      ->check(CLI::IsMember({"open", "periodic"}));
  sub->add_option("--fcidump", m.fcidump, "Integral file, absolute or inside the fixture directory");
  sub->add_option("--bond", m.bond, "Bond length selecting <model>_<bond>.fcidump");
}

void add_run_options(CLI::App* sub, RunOptions& r) {
  sub->add_option("--mode", r.mode, "full, penalty or reduced")
      ->check(CLI::IsMember({"full", "penalty", "reduced"}));
  sub->add_option("--q", r.q, "Charge sector");
  sub->add_option("--parity", r.parity, "Parity sector (+1 or -1)")->check(CLI::IsMember({-1, 1}));
  sub->add_option("--sym", r.sym, "Penalized symmetry: charge or parity")
      ->check(CLI::IsMember({"charge", "parity"}));
  sub->add_option("--alpha", r.alpha, "Penalty weight or 'auto'");
  sub->add_option("--target", r.target, "Penalty target eigenvalue");
  sub->add_option("--k", r.k, "Number of eigenstates")->check(CLI::PositiveNumber);
  sub->add_option("--seed", r.seed, "Random seed");
  sub->add_option("--rhobeg", r.rhobeg, "Initial trust-region radius");
  sub->add_option("--max-iters", r.max_iters, "Evaluation budget per start (0 = 625 x qubits)")
      ->check(CLI::NonNegativeNumber);
  sub->add_option("--ftol", r.ftol, "Final trust-region radius");
  sub->add_option("--restarts", r.restarts, "Random restarts per excited state")
      ->check(CLI::NonNegativeNumber);
  sub->add_option("--restarts-ground", r.restarts_ground, "Random starts for the ground state")
      ->check(CLI::PositiveNumber);
  sub->add_option("--layers", r.layers, "Ansatz layers")->check(CLI::NonNegativeNumber);
  sub->add_option("--entangler", r.entangler, "cx or cz")->check(CLI::IsMember({"cx", "cz"}));
  sub->add_option("--beta", r.beta, "Deflation weight for every state");
}

void add_output_options(CLI::App* sub, OutputOptions& o) {
  sub->add_option("--out", o.out, "JSON output path");
  sub->add_option("--csv", o.csv, "CSV output path (stdout when omitted)");
}

/// Fills every option of `sub` that was not given on the command line from
/// a flat JSON object keyed by long option names.
void apply_config(CLI::App* sub, const std::string& path) {
  json j;
  try {
    j = json::parse(read_file(path));
  } catch (const json::exception& e) {
    throw FormatError("config '" + path + "': " + e.what());
  }
  if (!j.is_object()) throw FormatError("config '" + path + "' must hold a JSON object");
  auto text = [](const json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_boolean()) return std::string(v.get<bool>() ? "true" : "false");
    if (v.is_number()) return v.dump();
    throw FormatError("config values must be strings, numbers or booleans");
  };
  for (const auto& [key, value] : j.items()) {
    std::string name = key;
    std::replace(name.begin(), name.end(), '_', '-');
    CLI::Option* opt = sub->get_option_no_throw("--" + name);
    if (opt == nullptr || name == "config") {
      throw ParameterError("unknown config key '" + key + "'");
    }
    if (opt->count() > 0) continue;
    if (value.is_array()) {
      std::vector<std::string> items;
      for (const auto& v : value) items.push_back(text(v));
      opt->add_result(items);
    } else {
      opt->add_result(text(value));
    }
    opt->run_callback();
  }
}

void emit(const std::vector<CsvRow>& rows, const OutputOptions& o, std::ostream& out) {
  std::ostringstream csv;
  write_csv(csv, rows);
  if (o.csv.empty()) {
    out << csv.str();
  } else {
    write_file_atomic(o.csv, csv.str());
  }
}

SectorBasis sector_basis(int n_qubits, Charge q, std::optional<int> parity) {
  if (!parity) return enumerate_charge_sector(n_qubits, q);
  if (q != Charge{}) throw DomainError("reflection parity sectors are defined for charge 0");
  return enumerate_charge_parity_sector(n_qubits, *parity);
}

std::vector<CsvRow> spectrum_rows(const BuiltModel& bm, std::optional<double> q,
                                  std::optional<int> parity, std::string label) {
  std::vector<CsvRow> rows;
  if (q || parity) {
    const Charge c = q ? Charge::from_value(*q) : Charge{};
    const ReducedHamiltonian r = project_hamiltonian(bm.h, sector_basis(bm.n_qubits, c, parity));
    const EigenSystem es = eigensolve(r.matrix);
    for (Eigen::Index i = 0; i < es.values.size(); ++i) {
      rows.push_back({label, "exact", bm.n_qubits, c.value(), static_cast<int>(i), es.values[i]});
    }
    return rows;
  }
  const auto levels = labeled_spectrum(bm.h, z_charge_operator(bm.n_qubits));
  for (std::size_t i = 0; i < levels.size(); ++i) {
    rows.push_back({label, "exact", bm.n_qubits, levels[i].charge, static_cast<int>(i),
                    levels[i].energy});
  }
  return rows;
}

VQDResult run_model(const BuiltModel& bm, const RunOptions& r) {
  VQDConfig cfg;
  cfg.k_max = r.k;
  if (r.beta) cfg.betas = {*r.beta};
  cfg.ansatz.layers = r.layers;
  cfg.ansatz.entangler = r.entangler == "cz" ? Entangler::kCzAllPairs : Entangler::kCxAllPairs;
  cfg.optimizer.rhobeg = r.rhobeg;
  cfg.optimizer.max_iters = r.max_iters;
  cfg.optimizer.ftol = r.ftol;
  cfg.optimizer.seed = r.seed;
  cfg.optimizer.restarts_ground = r.restarts_ground;
  cfg.optimizer.restarts_excited = r.restarts;
  cfg.mode = parse_mode(r.mode);
  const Charge q = r.q ? Charge::from_value(*r.q) : bm.default_charge;

  switch (cfg.mode) {
    case VqdMode::kFull:
      return run_vqd(bm.h, cfg);
    case VqdMode::kReduced:
      return run_cpvqd_reduced(bm.h, q, r.parity, cfg);
    case VqdMode::kPenalty: {
      const bool by_charge = r.sym == "charge";
      const PauliSum s = by_charge ? z_charge_operator(bm.n_qubits) : z2_parity_operator(bm.n_qubits);
      const double target = r.target.value_or(by_charge ? q.value() : r.parity.value_or(1));
      const double alpha =
          r.alpha == "auto" ? default_penalty_weight(bm.h) : parse_number(r.alpha, "alpha");
      VQDResult res = run_cpvqd_penalty(bm.h, s, target, alpha, cfg);
      if (by_charge) res.charge = target;
      if (!by_charge) res.parity = static_cast<int>(target);
      return res;
    }
  }
  throw ParameterError("unsupported mode");
}

void report_states(const VQDResult& res, std::ostream& err) {
  for (std::size_t k = 0; k < res.states.size(); ++k) {
    const auto& s = res.states[k];
    err << "state " << k << ": E = " << format_double(s.energy)
        << (s.converged ? "" : "  [not converged]");
    if (s.h_expectation) err << "  <H> = " << format_double(*s.h_expectation);
    if (s.s_expectation) err << "  <S> = " << format_double(*s.s_expectation);
    err << '\n';
    for (const auto& f : s.flags) err << "  flag: " << f << '\n';
  }
}

int cmd_vqd(const ModelOptions& mo, const RunOptions& ro, const OutputOptions& oo,
            std::ostream& out, std::ostream& err) {
  const BuiltModel bm = build_model(mo);
  VQDResult res;
  bool aborted = false;
  try {
    res = run_model(bm, ro);
  } catch (const VqdAbort& e) {
    err << "optimizer abort: " << e.what() << '\n';
    res = e.partial();
    aborted = true;
  }
  if (!oo.out.empty()) write_file_atomic(oo.out, result_to_json(res, bm.name).dump(2) + "\n");
  emit(csv_rows(res, bm.name), oo, out);
  report_states(res, err);
  return aborted || !res.all_converged() ? kExitConvergence : kExitOk;
}

struct SweepPoint {
  ModelOptions model;
  std::string label;
};

/// Runs `task(i)` for i in [0, count) on `jobs` threads; rethrows the
/// first failure in index order.
void parallel_for(std::size_t count, int jobs, const std::function<void(std::size_t)>& task) {
  std::vector<std::exception_ptr> errors(count);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        task(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const auto n_threads = static_cast<std::size_t>(std::max(1, jobs));
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < std::min(n_threads, count); ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

int cmd_sweep(const ModelOptions& mo, const RunOptions& ro, const OutputOptions& oo,
              const std::string& var, const std::string& values, bool exact, int jobs,
              std::ostream& out, std::ostream& err) {
  std::vector<SweepPoint> points;
  for (const auto& v : split_list(values)) {
    SweepPoint p{mo, ""};
    if (var == "bond") {
      if (!is_chemistry(mo.model) || mo.model == "file") {
        throw ParameterError("bond sweeps need --model h2 or hehp");
      }
      p.model.fcidump.clear();
      p.model.bond = v;
    } else if (var == "m") {
      p.model.m = parse_number(v, "mass");
    } else {
      const double n = parse_number(v, "site count");
      if (n != static_cast<int>(n)) throw ParameterError("site count must be an integer");
      p.model.n = static_cast<int>(n);
    }
    p.label = mo.model + "@" + var + "=" + v;
    points.push_back(std::move(p));
  }
  if (var == "bond") {
    for (const auto& p : points) resolve_fixture(p.model.model + "_" + p.model.bond + ".fcidump");
  }

  std::vector<std::vector<CsvRow>> rows(points.size());
  std::vector<VQDResult> results(points.size());
  parallel_for(points.size(), jobs, [&](std::size_t i) {
    const BuiltModel bm = build_model(points[i].model);
    if (exact) {
      const std::optional<double> q = ro.q ? ro.q : std::optional<double>(bm.default_charge.value());
      rows[i] = spectrum_rows(bm, q, ro.parity, points[i].label);
    } else {
      results[i] = run_model(bm, ro);
      rows[i] = csv_rows(results[i], points[i].label);
    }
  });

  std::vector<CsvRow> flat;
  bool ok = true;
  for (std::size_t i = 0; i < points.size(); ++i) {
    flat.insert(flat.end(), rows[i].begin(), rows[i].end());
    if (!exact) {
      ok = ok && results[i].all_converged();
      err << points[i].label << '\n';
      report_states(results[i], err);
    }
  }
  if (!oo.out.empty() && !exact) {
    json arr = json::array();
    for (std::size_t i = 0; i < points.size(); ++i) {
      arr.push_back(result_to_json(results[i], points[i].label));
    }
    write_file_atomic(oo.out, arr.dump(2) + "\n");
  }
  emit(flat, oo, out);
  return ok ? kExitOk : kExitConvergence;
}

int cmd_spectrum(const ModelOptions& mo, const RunOptions& ro, const std::string& sector,
                 const OutputOptions& oo, std::ostream& out) {
  const BuiltModel bm = build_model(mo);
  std::optional<double> q = ro.q;
  if (!sector.empty()) q = parse_sector(sector);
  const auto rows = spectrum_rows(bm, q, ro.parity, bm.name);
  if (!oo.out.empty()) {
    json j;
    j["model"] = bm.name;
    j["N"] = bm.n_qubits;
    j["q"] = q ? json(*q) : json(nullptr);
    if (ro.parity) j["parity"] = *ro.parity;
    json energies = json::array(), charges = json::array();
    for (const auto& r : rows) {
      energies.push_back(r.energy);
      charges.push_back(r.charge ? json(*r.charge) : json(nullptr));
    }
    j["energies"] = energies;
    j["charges"] = charges;
    write_file_atomic(oo.out, j.dump(2) + "\n");
  }
  emit(rows, oo, out);
  return kExitOk;
}

int cmd_reduce(const ModelOptions& mo, const RunOptions& ro, const OutputOptions& oo,
               std::ostream& out) {
  const BuiltModel bm = build_model(mo);
  const Charge q = ro.q ? Charge::from_value(*ro.q) : bm.default_charge;
  const SectorBasis basis = sector_basis(bm.n_qubits, q, ro.parity);
  const ReducedHamiltonian r = project_hamiltonian(bm.h, basis);
  json j;
  j["model"] = bm.name;
  j["N"] = bm.n_qubits;
  j["q"] = q.value();
  if (ro.parity) j["parity"] = *ro.parity;
  j["dim"] = basis.dim();
  j["n_star"] = r.n_star;
  j["pad_value"] = r.pad_value;
  json elems = json::array();
  for (const auto& e : basis.elements) {
    if (e.partner) {
      elems.push_back({e.index, *e.partner, e.partner_sign});
    } else {
      elems.push_back(e.index);
    }
  }
  j["basis"] = elems;
  json re = json::array(), im = json::array();
  bool complex_entries = false;
  for (Eigen::Index a = 0; a < r.matrix.rows(); ++a) {
    json row_re = json::array(), row_im = json::array();
    for (Eigen::Index b = 0; b < r.matrix.cols(); ++b) {
      row_re.push_back(r.matrix(a, b).real());
      row_im.push_back(r.matrix(a, b).imag());
      complex_entries = complex_entries || r.matrix(a, b).imag() != 0.0;
    }
    re.push_back(row_re);
    im.push_back(row_im);
  }
  j["matrix_re"] = re;
  if (complex_entries) j["matrix_im"] = im;
  const std::string text = j.dump(2) + "\n";
  if (oo.out.empty()) {
    out << text;
  } else {
    write_file_atomic(oo.out, text);
  }
  return kExitOk;
}

int cmd_report_timing(const std::vector<std::string>& files, const std::string& out_path,
                      std::ostream& out) {
  std::vector<TimingRecord> records;
  for (const auto& f : files) {
    json j;
    try {
      j = json::parse(read_file(f));
    } catch (const json::exception& e) {
      throw FormatError("'" + f + "': " + e.what());
    }
    if (j.is_array()) {
      for (const auto& item : j) records.push_back(timing_from_json(item));
    } else {
      records.push_back(timing_from_json(j));
    }
  }
  const std::string table = format_timing_table(timing_columns(records));
  if (out_path.empty()) {
    out << table;
  } else {
    write_file_atomic(out_path, table);
  }
  return kExitOk;
}

}  // namespace

std::string fixture_directory() {
  if (const char* env = std::getenv("CPVQD_FIXTURES"); env != nullptr && *env != '\0') {
    return env;
  }
  return CPVQD_DEFAULT_FIXTURES;
}

std::string resolve_fixture(const std::string& name) {
  namespace fs = std::filesystem;
  if (fs::is_regular_file(name)) return name;
  const fs::path inside = fs::path(fixture_directory()) / name;
  if (!fs::path(name).is_absolute() && fs::is_regular_file(inside)) return inside.string();
  throw IoError("integral file '" + name + "' not found (fixture directory '" +
                fixture_directory() + "')");
}

BuiltModel build_model(const ModelOptions& o) {
  BuiltModel bm;
  bm.name = o.model;
  if (o.model == "dirac" || o.model == "schwinger") {
    LatticeParams p;
    p.n_sites = o.n;
    p.mass = o.m;
    p.coupling = o.g;
    p.spacing = o.a;
    const bool dirac = o.model == "dirac";
    p.boundary = dirac || o.boundary == "periodic" ? Boundary::kPeriodic : Boundary::kOpen;
    bm.h = dirac ? dirac_pbc_hamiltonian(p) : schwinger_hamiltonian(p);
    bm.n_qubits = o.n;
    return bm;
  }
  if (!is_chemistry(o.model)) throw ParameterError("unknown model '" + o.model + "'");
  std::string path;
  if (!o.fcidump.empty()) {
    path = resolve_fixture(o.fcidump);
  } else if (o.model == "file") {
    throw ParameterError("--model file needs --fcidump");
  } else {
    const std::string bond = o.bond.empty() ? (o.model == "h2" ? "0.7414" : "1.0") : o.bond;
    path = resolve_fixture(o.model + "_" + bond + ".fcidump");
  }
  const MolecularIntegrals mol = load_fcidump(path);
  bm.n_qubits = mol.n_modes;
  bm.h = simplify(jordan_wigner(build_electronic_hamiltonian(mol), mol.n_modes), kPruneTolerance);
  // HeH+ is studied in its singly occupied sector, one electron short of the
  // neutral count recorded in the integral header.
  const int electrons = o.model == "hehp" ? 1 : mol.n_electrons;
  bm.default_charge = Charge::from_twice(mol.n_modes - 2 * electrons);
  return bm;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Charge-preserving variational quantum deflation toolkit", "cpvqd"};
  app.require_subcommand(1);

  ModelOptions model;
  RunOptions run;
  OutputOptions output;
  std::string config;
  std::string sector;
  std::string sweep_var = "m";
  std::string sweep_values;
  bool sweep_exact = false;
  int jobs = 1;
  std::vector<std::string> timing_files;
  std::string timing_out;

  auto* spectrum = app.add_subcommand("spectrum", "Exact spectrum, full or in one sector");
  add_model_options(spectrum, model);
  spectrum->add_option("--sector", sector, "Sector as q=<charge>");
  spectrum->add_option("--q", run.q, "Charge sector");
  spectrum->add_option("--parity", run.parity, "Reflection parity (charge 0 only)")
      ->check(CLI::IsMember({-1, 1}));
  add_output_options(spectrum, output);

  auto* vqd = app.add_subcommand("vqd", "Variational deflation in full, penalty or reduced mode");
  add_model_options(vqd, model);
  add_run_options(vqd, run);
  add_output_options(vqd, output);

  auto* sweep = app.add_subcommand("sweep", "Repeat a run over bond lengths, masses or sizes");
  add_model_options(sweep, model);
  add_run_options(sweep, run);
  add_output_options(sweep, output);
  sweep->add_option("--var", sweep_var, "bond, m or n")->check(CLI::IsMember({"bond", "m", "n"}));
  sweep->add_option("--values", sweep_values, "Comma separated values");
  sweep->add_flag("--exact", sweep_exact, "Exact sector spectrum instead of VQD");
  sweep->add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);

  auto* reduce = app.add_subcommand("reduce", "Project onto a sector and print its metadata");
  add_model_options(reduce, model);
  reduce->add_option("--q", run.q, "Charge sector");
  reduce->add_option("--parity", run.parity, "Reflection parity (charge 0 only)")
      ->check(CLI::IsMember({-1, 1}));
  add_output_options(reduce, output);

  auto* timing = app.add_subcommand("report-timing", "Tabulate QC/CC timings of result files");
  timing->add_option("files", timing_files, "Result JSON files")->required();
  timing->add_option("--out", timing_out, "Write the table here instead of stdout");

  for (auto* sub : {spectrum, vqd, sweep, reduce, timing}) {
    sub->add_option("--config", config, "JSON file of option defaults; flags take precedence");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  try {
    CLI::App* active = app.get_subcommands().front();
    if (!config.empty()) apply_config(active, config);
    if (active == spectrum) return cmd_spectrum(model, run, sector, output, out);
    if (active == vqd) return cmd_vqd(model, run, output, out, err);
    if (active == sweep) {
      return cmd_sweep(model, run, output, sweep_var, sweep_values, sweep_exact, jobs, out, err);
    }
    if (active == reduce) return cmd_reduce(model, run, output, out);
    return cmd_report_timing(timing_files, timing_out, out);
  } catch (const CLI::ParseError& e) {
    err << "config: " << e.what() << '\n';
    return kExitUsage;
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const FormatError& e) {
    err << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const OptimizationAbort& e) {
    err << "error: " << e.what() << '\n';
    return kExitConvergence;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitIo;
  }
}

}  // namespace cpvqd
