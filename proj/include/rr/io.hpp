/*
 * Copyright 2026 The restricted-range Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

// JSON / CSV exchange formats.
//
//   matrix   {"order": n, "re": [[..]], "im": [[..]], "dims": [n1, ..]}
//   set      CSV "kind,re,im" (kind is boundary or interior) and a JSON mirror
//   range    {"lo", "hi", "witness_lo", "witness_hi", "restarts_converged"}
//   channel  {"kraus": [matrix, ..]} or a Choi matrix with dims [out, in]
//   verdict  {"status", "method", "restarts", "certificate"}

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "rr/apps.hpp"
#include "rr/channels.hpp"
#include "rr/kentangled.hpp"
#include "rr/linalg.hpp"
#include "rr/planar.hpp"
#include "rr/product.hpp"

namespace rr::io {

using json = nlohmann::json;

inline json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw DomainError(std::string("malformed JSON: ") + e.what());
  }
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DomainError("cannot open input file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DomainError("cannot open output file: " + path);
  out << text;
}

//----------------------------------------------------------------------------
// Matrices
//----------------------------------------------------------------------------

namespace detail {
inline double num(const json& j, const char* what) {
  if (!j.is_number()) throw DomainError(std::string("expected a number in ") + what);
  return j.get<double>();
}
}  // namespace detail

inline json to_json(const ComplexMatrix& x) {
  const int n = x.order();
  json re = json::array(), im = json::array();
  for (int i = 0; i < n; ++i) {
    json r = json::array(), c = json::array();
    for (int j = 0; j < n; ++j) {
      r.push_back(x.mat()(i, j).real());
      c.push_back(x.mat()(i, j).imag());
    }
    re.push_back(std::move(r));
    im.push_back(std::move(c));
  }
  json out = {{"order", n}, {"re", re}, {"im", im}};
  out["dims"] = x.has_space() ? json(x.space().dims()) : json(std::vector<int>{n});
  return out;
}

inline ComplexMatrix matrix_from_json(const json& j) {
  if (!j.is_object() || !j.contains("re")) throw DomainError("matrix JSON needs an object with \"re\"");
  const json& re = j.at("re");
  if (!re.is_array() || re.empty()) throw DomainError("\"re\" must be a non-empty array of rows");
  const int n = static_cast<int>(re.size());
  if (j.contains("order")) {
    if (!j.at("order").is_number_integer()) throw DomainError("\"order\" must be an integer");
    if (j.at("order").get<int>() != n) throw DimensionError("\"order\" does not match the row count");
  }
  const json* im = j.contains("im") ? &j.at("im") : nullptr;
  if (im && (!im->is_array() || static_cast<int>(im->size()) != n))
    throw DimensionError("\"im\" must have the same row count as \"re\"");
  Mat m(n, n);
  for (int r = 0; r < n; ++r) {
    const json& row = re.at(static_cast<size_t>(r));
    if (!row.is_array()) throw DomainError("matrix rows must be arrays");
    if (static_cast<int>(row.size()) != n) throw DimensionError("matrix must be square");
    for (int c = 0; c < n; ++c) {
      double imv = 0.0;
      if (im) {
        const json& irow = im->at(static_cast<size_t>(r));
        if (!irow.is_array() || static_cast<int>(irow.size()) != n)
          throw DimensionError("\"im\" rows must match \"re\"");
        imv = detail::num(irow.at(static_cast<size_t>(c)), "im");
      }
      m(r, c) = cplx(detail::num(row.at(static_cast<size_t>(c)), "re"), imv);
    }
  }
  std::optional<TensorSpace> sp;
  if (j.contains("dims")) {
    const json& d = j.at("dims");
    if (!d.is_array() || d.empty()) throw DomainError("\"dims\" must be a non-empty array");
    std::vector<int> dims;
    for (const auto& v : d) {
      if (!v.is_number_integer()) throw DomainError("\"dims\" entries must be integers");
      dims.push_back(v.get<int>());
    }
    sp = TensorSpace(dims);
  }
  return ComplexMatrix(m, sp);
}

inline ComplexMatrix read_matrix(const std::string& path) { return matrix_from_json(parse_json(read_file(path))); }

//----------------------------------------------------------------------------
// States
//----------------------------------------------------------------------------

inline json vec_json(const Vec& v) {
  json re = json::array(), im = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    re.push_back(v(i).real());
    im.push_back(v(i).imag());
  }
  return {{"re", re}, {"im", im}};
}

inline Vec vec_from_json(const json& j) {
  if (!j.is_object() || !j.contains("re") || !j.at("re").is_array())
    throw DomainError("vector JSON needs \"re\" array");
  const json& re = j.at("re");
  const json* im = j.contains("im") ? &j.at("im") : nullptr;
  if (im && im->size() != re.size()) throw DimensionError("\"im\" length differs from \"re\"");
  Vec v(static_cast<Eigen::Index>(re.size()));
  for (size_t i = 0; i < re.size(); ++i)
    v(static_cast<Eigen::Index>(i)) = cplx(detail::num(re[i], "re"), im ? detail::num((*im)[i], "im") : 0.0);
  return v;
}

inline json to_json(const ProductState& s) {
  json out = vec_json(s.flatten());
  out["dims"] = s.space().dims();
  json f = json::array();
  for (const Vec& v : s.factors()) f.push_back(vec_json(v));
  out["factors"] = f;
  return out;
}

inline json to_json(const SchmidtState& s) {
  json out = vec_json(s.flatten());
  out["dims"] = s.space().dims();
  std::vector<double> xi(s.coefficients().data(), s.coefficients().data() + s.rank());
  out["schmidt"] = xi;
  return out;
}

inline json cplx_json(cplx z) { return json::array({z.real(), z.imag()}); }

//----------------------------------------------------------------------------
// Planar sets
//----------------------------------------------------------------------------

inline std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v == 0.0 ? 0.0 : v);
  return buf;
}

// Hole boundaries are emitted as boundary rows after the outer boundary.
inline std::string to_csv(const PlanarSet& s) {
  std::string out = "kind,re,im\n";
  auto rows = [&out](const std::vector<cplx>& pts, const char* kind) {
    for (cplx z : pts) out += std::string(kind) + "," + fmt(z.real()) + "," + fmt(z.imag()) + "\n";
  };
  rows(s.boundary, "boundary");
  rows(s.inner, "boundary");
  rows(s.interior, "interior");
  return out;
}

inline json to_json(const PlanarSet& s) {
  auto pts = [](const std::vector<cplx>& v) {
    json a = json::array();
    for (cplx z : v) a.push_back(cplx_json(z));
    return a;
  };
  return {{"boundary", pts(s.boundary)}, {"hole", pts(s.inner)}, {"interior", pts(s.interior)},
          {"closed", s.closed},          {"flat", s.flat},       {"min_modulus", s.min_modulus()},
          {"max_modulus", s.max_modulus()}};
}

inline PlanarSet planar_from_json(const json& j) {
  auto pts = [&j](const char* key) {
    std::vector<cplx> v;
    if (!j.contains(key)) return v;
    for (const auto& p : j.at(key)) {
      if (!p.is_array() || p.size() != 2) throw DomainError("points must be [re, im] pairs");
      v.emplace_back(detail::num(p[0], key), detail::num(p[1], key));
    }
    return v;
  };
  PlanarSet s;
  s.boundary = pts("boundary");
  s.inner = pts("hole");
  s.interior = pts("interior");
  s.closed = j.value("closed", true);
  s.flat = j.value("flat", false);
  if (s.boundary.empty()) throw DomainError("planar set needs a boundary");
  return s;
}

//----------------------------------------------------------------------------
// Ranges and verdicts
//----------------------------------------------------------------------------

inline json to_json(const HermitianPNR& r) {
  return {{"lo", r.lo},
          {"hi", r.hi},
          {"witness_lo", to_json(r.witness_lo)},
          {"witness_hi", to_json(r.witness_hi)},
          {"restarts_converged", r.restarts_converged}};
}

inline json to_json(const KRangeResult& r) {
  return {{"k", r.k},
          {"lo", r.lo},
          {"hi", r.hi},
          {"witness_lo", to_json(r.witness_lo)},
          {"witness_hi", to_json(r.witness_hi)},
          {"restarts_converged", r.restarts_converged}};
}

inline json to_json(const Verdict& v) {
  json out = {{"status", to_string(v.status)}, {"method", v.method}, {"restarts", v.restarts}};
  if (v.certificate) {
    json c = vec_json(v.certificate->state);
    c["dims"] = v.certificate->space.dims();
    c["value"] = cplx_json(v.certificate->value);
    if (!v.certificate->factors.empty()) {
      json f = json::array();
      for (const Vec& x : v.certificate->factors) f.push_back(vec_json(x));
      c["factors"] = f;
    }
    out["certificate"] = c;
  } else {
    out["certificate"] = nullptr;
  }
  return out;
}

//----------------------------------------------------------------------------
// Channels
//----------------------------------------------------------------------------

inline json to_json(const QuantumChannel& ch) {
  json ks = json::array();
  for (const Mat& y : ch.kraus()) {
    json re = json::array(), im = json::array();
    for (Eigen::Index i = 0; i < y.rows(); ++i) {
      json r = json::array(), c = json::array();
      for (Eigen::Index j = 0; j < y.cols(); ++j) {
        r.push_back(y(i, j).real());
        c.push_back(y(i, j).imag());
      }
      re.push_back(r);
      im.push_back(c);
    }
    ks.push_back({{"re", re}, {"im", im}});
  }
  return {{"kraus", ks}};
}

// Kraus operators may be rectangular (out x in).
inline Mat rect_from_json(const json& j) {
  if (!j.is_object() || !j.contains("re") || !j.at("re").is_array() || j.at("re").empty())
    throw DomainError("Kraus operator needs a non-empty \"re\" array");
  const json& re = j.at("re");
  const json* im = j.contains("im") ? &j.at("im") : nullptr;
  const size_t rows = re.size(), cols = re[0].size();
  if (cols == 0) throw DimensionError("empty Kraus row");
  Mat m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (size_t r = 0; r < rows; ++r) {
    if (!re[r].is_array() || re[r].size() != cols) throw DimensionError("ragged Kraus operator");
    if (im && (!(*im)[r].is_array() || (*im)[r].size() != cols)) throw DimensionError("ragged Kraus operator");
    for (size_t c = 0; c < cols; ++c)
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
          cplx(detail::num(re[r][c], "re"), im ? detail::num((*im)[r][c], "im") : 0.0);
  }
  return m;
}

inline QuantumChannel channel_from_kraus_json(const json& j) {
  const json& list = j.is_array() ? j : (j.contains("kraus") ? j.at("kraus") : j);
  if (!list.is_array() || list.empty()) throw DomainError("channel JSON needs a non-empty \"kraus\" list");
  std::vector<Mat> ks;
  for (const auto& k : list) ks.push_back(rect_from_json(k));
  return QuantumChannel(std::move(ks));
}

// Choi matrix JSON: a matrix with dims [out, in]; any positive trace is
// rescaled to the normalized convention.
inline ChoiMatrix choi_from_json(const json& j) {
  const ComplexMatrix m = matrix_from_json(j.contains("choi") ? j.at("choi") : j);
  if (!m.has_space() || !m.space().is_bipartite())
    throw DimensionError("Choi matrix needs \"dims\": [out, in]");
  if (!is_hermitian(m.mat())) throw DomainError("Choi matrix must be Hermitian");
  return ChoiMatrix::rescaled(m.mat(), m.space().dim(0), m.space().dim(1));
}

inline json choi_json(const ChoiMatrix& d) { return to_json(d.hermitian().op()); }

}  // namespace rr::io
