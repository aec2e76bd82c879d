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

#include "cpvqd/results.hpp"

#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "cpvqd/errors.hpp"

namespace cpvqd {

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string csv_line(const CsvRow& row) {
  std::ostringstream os;
  os << row.model << ',' << row.mode << ',' << row.n_qubits << ','
     << (row.charge ? format_double(*row.charge) : std::string()) << ',' << row.state << ','
     << format_double(row.energy) << ',' << (row.converged ? "true" : "false") << ','
     << format_double(row.qc_seconds) << ',' << format_double(row.cc_seconds) << ','
     << row.seed;
  return os.str();
}

void write_csv(std::ostream& os, const std::vector<CsvRow>& rows) {
  os << kCsvHeader << '\n';
  for (const auto& r : rows) os << csv_line(r) << '\n';
}

std::vector<CsvRow> csv_rows(const VQDResult& r, const std::string& model) {
  std::vector<CsvRow> rows;
  for (std::size_t k = 0; k < r.states.size(); ++k) {
    const auto& s = r.states[k];
    rows.push_back({model, to_string(r.mode), r.model_qubits, r.charge, static_cast<int>(k),
                    s.energy, s.converged, s.qc_seconds, s.cc_seconds, r.seed});
  }
  return rows;
}

json result_to_json(const VQDResult& r, const std::string& model) {
  json j;
  j["model"] = model;
  j["mode"] = to_string(r.mode);
  j["N"] = r.model_qubits;
  j["ansatz_qubits"] = r.ansatz_qubits;
  j["layers"] = r.ansatz.layers;
  j["q"] = r.charge ? json(*r.charge) : json(nullptr);
  if (r.parity) j["parity"] = *r.parity;
  if (r.sector_dim) j["sector_dim"] = *r.sector_dim;
  if (r.pad_value) j["pad_value"] = *r.pad_value;
  if (r.alpha) j["alpha"] = *r.alpha;
  j["betas"] = r.betas;
  j["seed"] = r.seed;
  j["energies"] = r.energies();
  j["overlaps"] = r.overlaps;
  json iterations = json::array(), evaluations = json::array(), qc = json::array(),
       cc = json::array(), converged = json::array(), flags = json::array(),
       params = json::array(), stops = json::array();
  for (const auto& s : r.states) {
    iterations.push_back(s.iterations);
    evaluations.push_back(s.evaluations);
    qc.push_back(s.qc_seconds);
    cc.push_back(s.cc_seconds);
    converged.push_back(s.converged);
    flags.push_back(s.flags);
    params.push_back(s.params);
    stops.push_back(s.stop);
  }
  j["iterations"] = iterations;
  j["evaluations"] = evaluations;
  j["qc_seconds"] = qc;
  j["cc_seconds"] = cc;
  j["converged"] = converged;
  j["flags"] = flags;
  j["stop"] = stops;
  j["params"] = params;
  if (r.mode == VqdMode::kPenalty) {
    json h = json::array(), s = json::array();
    for (const auto& st : r.states) {
      h.push_back(st.h_expectation.value_or(0.0));
      s.push_back(st.s_expectation.value_or(0.0));
    }
    j["h_expectation"] = h;
    j["s_expectation"] = s;
  }
  return j;
}

TimingRecord timing_from_json(const json& j) {
  auto read = [&](const char* key) {
    if (!j.is_object() || !j.contains(key) || !j[key].is_array()) {
      throw FormatError(std::string("result record lacks array '") + key + "'");
    }
    std::vector<double> out;
    for (const auto& v : j[key]) {
      if (!v.is_number()) throw FormatError(std::string("non-numeric entry in '") + key + "'");
      out.push_back(v.get<double>());
    }
    return out;
  };
  TimingRecord rec;
  rec.qc_seconds = read("qc_seconds");
  rec.cc_seconds = read("cc_seconds");
  if (rec.qc_seconds.size() != rec.cc_seconds.size() || rec.qc_seconds.empty()) {
    throw FormatError("qc_seconds and cc_seconds must be non-empty and equally long");
  }
  if (j.contains("N") && j["N"].is_number_integer()) {
    rec.label = "N=" + std::to_string(j["N"].get<int>());
  }
  return rec;
}

std::optional<double> TimingColumn::total() const {
  if (!qc || !cc) return std::nullopt;
  return *qc + *cc;
}

std::optional<double> TimingColumn::qc_percent() const {
  const auto t = total();
  if (!t || *t <= 0.0) return std::nullopt;
  return 100.0 * *qc / *t;
}

std::optional<double> TimingColumn::cc_percent() const {
  const auto t = total();
  if (!t || *t <= 0.0) return std::nullopt;
  return 100.0 * *cc / *t;
}

std::vector<TimingColumn> timing_columns(const std::vector<TimingRecord>& records) {
  std::vector<TimingColumn> cols;
  for (const auto& rec : records) {
    const std::string prefix = rec.label.empty() ? std::string() : rec.label + " ";
    TimingColumn gs{prefix + "GS", rec.qc_seconds.front(), rec.cc_seconds.front()};
    TimingColumn es{prefix + "ES", std::nullopt, std::nullopt};
    if (rec.qc_seconds.size() > 1) {
      double qc = 0.0, cc = 0.0;
      for (std::size_t k = 1; k < rec.qc_seconds.size(); ++k) {
        qc += rec.qc_seconds[k];
        cc += rec.cc_seconds[k];
      }
      es.qc = qc;
      es.cc = cc;
    }
    cols.push_back(gs);
    cols.push_back(es);
  }
  return cols;
}

std::string format_timing_table(const std::vector<TimingColumn>& columns) {
  constexpr int kLabel = 14;
  constexpr int kCell = 14;
  std::ostringstream os;
  os << std::left << std::setw(kLabel) << "";
  for (const auto& c : columns) os << std::right << std::setw(kCell) << c.label;
  os << '\n';
  auto row = [&](const char* name, auto get, int precision) {
    os << std::left << std::setw(kLabel) << name;
    for (const auto& c : columns) {
      const std::optional<double> v = get(c);
      std::ostringstream cell;
      if (v) {
        cell << std::fixed << std::setprecision(precision) << *v;
      } else {
        cell << "-";
      }
      os << std::right << std::setw(kCell) << cell.str();
    }
    os << '\n';
  };
  row("QC(sec)", [](const TimingColumn& c) { return c.qc; }, 4);
  row("CC(sec)", [](const TimingColumn& c) { return c.cc; }, 4);
  row("Total", [](const TimingColumn& c) { return c.total(); }, 4);
  row("QC/Total %", [](const TimingColumn& c) { return c.qc_percent(); }, 2);
  row("CC/Total %", [](const TimingColumn& c) { return c.cc_percent(); }, 2);
  return os.str();
}

void write_file_atomic(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open '" + tmp.string() + "' for writing");
    out << content;
    out.flush();
    if (!out) throw IoError("write to '" + tmp.string() + "' failed");
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw IoError("cannot move result into '" + path + "'");
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace cpvqd
