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

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

#include "cpvqd/errors.hpp"
#include "cpvqd/fermion.hpp"

namespace cpvqd {
namespace {

std::string upper(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return std::toupper(c); });
  return s;
}

bool ends_header(const std::string& line_upper) {
  return line_upper.find("&END") != std::string::npos ||
         line_upper.find('/') != std::string::npos;
}

// Extracts integer namelist entries (NORB=2,NELEC= 2,...) from the header.
std::map<std::string, int> parse_namelist(const std::string& header) {
  std::map<std::string, int> out;
  std::size_t pos = 0;
  while ((pos = header.find('=', pos)) != std::string::npos) {
    std::size_t key_end = pos;
    while (key_end > 0 && std::isspace(static_cast<unsigned char>(header[key_end - 1]))) --key_end;
    std::size_t key_begin = key_end;
    while (key_begin > 0 && std::isalnum(static_cast<unsigned char>(header[key_begin - 1]))) --key_begin;
    const std::string key = header.substr(key_begin, key_end - key_begin);
    std::size_t v = pos + 1;
    while (v < header.size() && std::isspace(static_cast<unsigned char>(header[v]))) ++v;
    int value = 0;
    auto [ptr, ec] = std::from_chars(header.data() + v, header.data() + header.size(), value);
    if (ec == std::errc() && !key.empty()) out.emplace(key, value);
    pos = pos + 1;
  }
  return out;
}

double parse_real(std::string token, std::size_t line) {
  // Fortran writers sometimes emit 1.0D-03.
  std::replace(token.begin(), token.end(), 'D', 'E');
  std::replace(token.begin(), token.end(), 'd', 'e');
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(token, &used);
  } catch (const std::exception&) {
    throw ParseError(line, "invalid number '" + token + "'");
  }
  if (used != token.size()) throw ParseError(line, "invalid number '" + token + "'");
  return v;
}

int parse_index(const std::string& token, std::size_t line) {
  int v = 0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
  if (ec != std::errc() || ptr != token.data() + token.size()) {
    throw ParseError(line, "invalid orbital index '" + token + "'");
  }
  return v;
}

}  // namespace

MolecularIntegrals parse_fcidump(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  std::string header;
  bool in_header = false;
  bool header_done = false;

  while (!header_done && std::getline(in, line)) {
    ++line_no;
    const std::string u = upper(line);
    if (!in_header) {
      if (u.find_first_not_of(" \t\r") == std::string::npos) continue;
      if (u.find("&FCI") == std::string::npos) {
        throw FormatError("FCIDUMP: missing &FCI header (line " +
                          std::to_string(line_no) + ")");
      }
      in_header = true;
    }
    header += u + " ";
    if (ends_header(u)) header_done = true;
  }
  if (!header_done) throw FormatError("FCIDUMP: header not terminated by &END");

  const auto keys = parse_namelist(header);
  const auto norb_it = keys.find("NORB");
  if (norb_it == keys.end() || norb_it->second < 0) {
    throw FormatError("FCIDUMP: header lacks NORB");
  }
  const int norb = norb_it->second;
  const auto nelec_it = keys.find("NELEC");
  const auto ms2_it = keys.find("MS2");

  const std::size_t n = norb;
  std::vector<double> h(n * n, 0.0);
  std::vector<double> eri(n * n * n * n, 0.0);
  auto eri_at = [&](int p, int q, int r, int s) -> double& {
    return eri[((p * n + q) * n + r) * n + s];
  };
  double core = 0.0;

  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream fields(line);
    std::vector<std::string> tok;
    for (std::string t; fields >> t;) tok.push_back(t);
    if (tok.empty()) continue;
    if (tok.size() != 5) {
      throw ParseError(line_no, "expected 'value i j k l', got " +
                                    std::to_string(tok.size()) + " fields");
    }
    const double v = parse_real(tok[0], line_no);
    std::array<int, 4> idx{};
    for (int a = 0; a < 4; ++a) {
      idx[a] = parse_index(tok[a + 1], line_no);
      if (idx[a] < 0 || idx[a] > norb) {
        throw ParseError(line_no, "orbital index out of range");
      }
    }
    const auto [i, j, k, l] = idx;
    if (i == 0 && j == 0 && k == 0 && l == 0) {
      core = v;
    } else if (k == 0 && l == 0) {
      if (i == 0 || j == 0) continue;  // orbital energies, not needed
      h[(i - 1) * n + (j - 1)] = v;
      h[(j - 1) * n + (i - 1)] = v;
    } else if (i > 0 && j > 0 && k > 0 && l > 0) {
      const int p = i - 1, q = j - 1, r = k - 1, s = l - 1;
      for (auto [a, b] : {std::pair{p, q}, std::pair{q, p}}) {
        for (auto [c, d] : {std::pair{r, s}, std::pair{s, r}}) {
          eri_at(a, b, c, d) = v;
          eri_at(c, d, a, b) = v;
        }
      }
    } else {
      throw ParseError(line_no, "unsupported index pattern");
    }
  }

  MolecularIntegrals m(2 * norb);
  m.n_electrons = nelec_it == keys.end() ? 0 : nelec_it->second;
  m.ms2 = ms2_it == keys.end() ? 0 : ms2_it->second;
  m.core_energy = core;
  for (int a = 0; a < m.n_modes; ++a) {
    for (int b = 0; b < m.n_modes; ++b) {
      if (a % 2 == b % 2) m.h1(a, b) = h[(a / 2) * n + (b / 2)];
    }
  }
  // Chemist (pq|rs) a+_p a+_r a_s a_q  ->  h_ijkl a+_i a+_j a_k a_l
  // with h_ijkl = (il|jk) and matching spins on (i,l) and (j,k).
  for (int i = 0; i < m.n_modes; ++i)
    for (int j = 0; j < m.n_modes; ++j)
      for (int k = 0; k < m.n_modes; ++k)
        for (int l = 0; l < m.n_modes; ++l)
          if (i % 2 == l % 2 && j % 2 == k % 2) {
            m.h2(i, j, k, l) = eri_at(i / 2, l / 2, j / 2, k / 2);
          }
  return m;
}

MolecularIntegrals load_fcidump(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open FCIDUMP file '" + path + "'");
  return parse_fcidump(in);
}

}  // namespace cpvqd
