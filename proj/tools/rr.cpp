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

// rr: command-line front end.
//
// Exit codes: 0 ok, 2 parse / domain, 3 dimension, 4 guard, 5 no certificate.

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include "rr/rr.hpp"

using namespace rr;
using io::json;

namespace {

struct Common {
  std::uint64_t seed = 0;
  int restarts = 50;
  int resolution = 720;
  int samples = 2000;
  std::string out;
  std::string format = "json";
};

struct FamilyArgs {
  std::string family;
  std::string matrix;
  double t = 0, s = 0;
  double a = 0, b = 0, c = 0, d = 0, x = 0;
  double a_im = 0, b_im = 0;
  double a1 = 0, a2 = 0, a3 = 0;
  double phi = 0, psi = 0;
  double x1 = 0.25, x2 = 0.25, x3 = 0.25;
};

struct ChannelArgs {
  std::string file;
  std::string format = "kraus";
  std::string family;
  double p = 0.0;
  int dim = 2;
};

void add_common(CLI::App* app, Common& c) {
  app->add_option("--seed", c.seed, "random seed")->capture_default_str();
  app->add_option("--restarts", c.restarts, "see-saw restarts")->capture_default_str();
  app->add_option("--resolution", c.resolution, "angular resolution")->capture_default_str();
  app->add_option("--samples", c.samples, "random product samples for clouds")->capture_default_str();
  app->add_option("--out", c.out, "output path (default stdout)");
  app->add_option("--format", c.format, "json or csv")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();
}

void add_family(CLI::App* app, FamilyArgs& f) {
  app->add_option("--matrix", f.matrix, "matrix JSON file");
  app->add_option("--family", f.family, "xts | yts | dfam | ud | vfam | u1qubit | rho-alpha")
      ->check(CLI::IsMember({"xts", "yts", "dfam", "ud", "vfam", "u1qubit", "rho-alpha"}));
  app->add_option("--t", f.t);
  app->add_option("--s", f.s);
  app->add_option("--a", f.a);
  app->add_option("--b", f.b);
  app->add_option("--c", f.c);
  app->add_option("--d", f.d);
  app->add_option("--x", f.x);
  app->add_option("--a-im", f.a_im);
  app->add_option("--b-im", f.b_im);
  app->add_option("--a1", f.a1);
  app->add_option("--a2", f.a2);
  app->add_option("--a3", f.a3);
  app->add_option("--phi", f.phi);
  app->add_option("--psi", f.psi);
  app->add_option("--x1", f.x1);
  app->add_option("--x2", f.x2);
  app->add_option("--x3", f.x3);
}

void add_channel(CLI::App* app, ChannelArgs& c) {
  app->add_option("--channel", c.file, "channel JSON file");
  app->add_option("--channel-format", c.format, "kraus or choi")
      ->check(CLI::IsMember({"kraus", "choi"}))
      ->capture_default_str();
  app->add_option("--channel-family", c.family,
                  "identity | depolarizing | amplitude-damping | phase-damping | bit-flip | werner-holevo | "
                  "transposition")
      ->check(CLI::IsMember({"identity", "depolarizing", "amplitude-damping", "phase-damping", "bit-flip",
                             "werner-holevo", "transposition"}));
  app->add_option("--p", c.p, "channel parameter");
  app->add_option("--dim", c.dim, "dimension for identity / transposition")->capture_default_str();
}

SeesawConfig seesaw(const Common& c) {
  SeesawConfig cfg;
  cfg.seed = c.seed;
  cfg.restarts = c.restarts;
  cfg.validate();
  return cfg;
}

ComplexMatrix build_operator(const FamilyArgs& f) {
  if (!f.matrix.empty() && !f.family.empty()) throw DomainError("give either --matrix or --family, not both");
  if (!f.matrix.empty()) return io::read_matrix(f.matrix);
  if (f.family == "xts") return xts(f.t, f.s).op();
  if (f.family == "yts") return yts(f.a, f.b, f.c, f.d, f.t, f.s).op();
  if (f.family == "dfam") return dfam(cplx(f.a, f.a_im), cplx(f.b, f.b_im), f.x).op();
  if (f.family == "ud") return ud(f.a1, f.a2, f.a3);
  if (f.family == "vfam") return vfam(f.phi, f.psi);
  if (f.family == "u1qubit") return u1qubit(f.phi);
  if (f.family == "rho-alpha") return rho_alpha(f.a1, f.x1, f.x2, f.x3).hermitian().op();
  throw DomainError("an operator is required: --matrix FILE or --family NAME");
}

ChoiMatrix build_choi(const ChannelArgs& c) {
  if (!c.file.empty()) {
    const json j = io::parse_json(io::read_file(c.file));
    if (c.format == "choi") return io::choi_from_json(j);
    return choi(io::channel_from_kraus_json(j));
  }
  if (c.family == "transposition") return channels::transposition(c.dim);
  if (c.family.empty()) throw DomainError("a channel is required: --channel FILE or --channel-family NAME");
  return choi([&] {
    if (c.family == "identity") return channels::identity(c.dim);
    if (c.family == "depolarizing") return channels::depolarizing(c.p);
    if (c.family == "amplitude-damping") return channels::amplitude_damping(c.p);
    if (c.family == "phase-damping") return channels::phase_damping(c.p);
    if (c.family == "bit-flip") return channels::bit_flip(c.p);
    return channels::werner_holevo(c.p);
  }());
}

QuantumChannel build_channel(const ChannelArgs& c) {
  if (!c.file.empty() && c.format == "kraus") return io::channel_from_kraus_json(io::parse_json(io::read_file(c.file)));
  if (c.family == "transposition") throw DomainError("transposition is not a channel (not completely positive)");
  return kraus_from_choi(build_choi(c));
}

void emit(const Common& c, const std::string& text) {
  if (c.out.empty()) {
    std::fwrite(text.data(), 1, text.size(), stdout);
    std::fflush(stdout);
  } else {
    io::write_file(c.out, text);
  }
}

void emit_json(const Common& c, const json& j) {
  if (c.format != "json") throw DomainError("this command only writes JSON");
  emit(c, j.dump(2) + "\n");
}

void emit_set(const Common& c, const PlanarSet& s) {
  if (c.format == "csv")
    emit(c, io::to_csv(s));
  else
    emit(c, io::to_json(s).dump(2) + "\n");
}

void emit_interval(const Common& c, const json& j) {
  if (c.format == "csv") {
    emit(c, "lo,hi\n" + io::fmt(j.at("lo").get<double>()) + "," + io::fmt(j.at("hi").get<double>()) + "\n");
    return;
  }
  emit(c, j.dump(2) + "\n");
}

bool hermitian_with_space(const ComplexMatrix& x) { return x.has_space() && is_hermitian(x.mat()); }

//----------------------------------------------------------------------------
// Commands
//----------------------------------------------------------------------------

int cmd_range(const Common& c, const FamilyArgs& f) {
  emit_set(c, numerical_range(build_operator(f), c.resolution));
  return 0;
}

int cmd_pnr(const Common& c, const FamilyArgs& f, bool closed_form) {
  if (closed_form) {
    Interval iv;
    if (f.family == "xts")
      iv = xts_exact_pnr(f.t, f.s);
    else if (f.family == "dfam")
      iv = d_exact_pnr(cplx(f.a, f.a_im), cplx(f.b, f.b_im), f.x);
    else
      throw DomainError("--closed-form is available for --family xts and dfam");
    emit_interval(c, {{"lo", iv.lo},
                      {"hi", iv.hi},
                      {"witness_lo", nullptr},
                      {"witness_hi", nullptr},
                      {"restarts_converged", 0},
                      {"method", "closed form"}});
    return 0;
  }
  const ComplexMatrix x = build_operator(f);
  const auto cfg = seesaw(c);
  if (hermitian_with_space(x)) {
    emit_interval(c, io::to_json(pnr_hermitian(HermitianMatrix(x), cfg)));
    return 0;
  }
  CloudOptions opt;
  opt.samples = c.samples;
  emit_set(c, pnr_cloud(x, opt, cfg).set);
  return 0;
}

int cmd_sep_range(const Common& c, const FamilyArgs& f) {
  CloudOptions opt;
  opt.samples = c.samples;
  emit_set(c, separable_range(build_operator(f), seesaw(c), opt));
  return 0;
}

int cmd_k_range(const Common& c, const FamilyArgs& f, int k) {
  const ComplexMatrix x = build_operator(f);
  const auto r = k_entangled_range(HermitianMatrix(x), k, seesaw(c));
  emit_interval(c, io::to_json(r));
  return 0;
}

int cmd_minkowski_power(const Common& c, double phi, int n, bool analytic) {
  if (n < 1) throw DomainError("n must be >= 1");
  PlanarSet s;
  if (analytic) {
    s = u_tensor_boundary(phi, n, c.resolution + 1);
  } else {
    s = minkowski_power(numerical_range(u1qubit(phi), c.resolution), n);
  }
  if (c.format == "csv") {
    emit(c, io::to_csv(s));
  } else {
    json j = io::to_json(s);
    j["phi"] = phi;
    j["n"] = n;
    j["analytic_min_modulus"] = std::pow(std::abs(std::cos(phi / 2)), n);
    emit(c, j.dump(2) + "\n");
  }
  return 0;
}

int cmd_hs_ensemble(const Common& c, int count, int bins, bool edges) {
  if (bins < 1) throw DomainError("bins must be >= 1");
  SeesawConfig cfg = seesaw(c);
  const auto samples = hs_ensemble(count, c.seed, cfg, edges);
  const int cols = edges ? 6 : 4;
  std::vector<std::vector<long>> hist(static_cast<size_t>(cols), std::vector<long>(static_cast<size_t>(bins), 0));
  auto bin_of = [bins](double v) { return std::clamp(static_cast<int>(std::floor(v * bins)), 0, bins - 1); };
  double mean1 = 0.0;
  for (const auto& s : samples) {
    for (int i = 0; i < 4; ++i) ++hist[static_cast<size_t>(i)][static_cast<size_t>(bin_of(s.spectrum(i)))];
    if (edges) {
      ++hist[4][static_cast<size_t>(bin_of(s.pmin))];
      ++hist[5][static_cast<size_t>(bin_of(s.pmax))];
    }
    mean1 += s.spectrum(0);
  }
  mean1 /= count;
  const double w = 1.0 / bins;
  const char* names[] = {"lambda1", "lambda2", "lambda3", "lambda4", "pnr_min", "pnr_max"};
  if (c.format == "csv") {
    std::string out = "bin_lo,bin_hi";
    for (int i = 0; i < cols; ++i) out += std::string(",") + names[i];
    out += ",density_lambda1,p_lambda1\n";
    for (int b = 0; b < bins; ++b) {
      out += io::fmt(b * w) + "," + io::fmt((b + 1) * w);
      for (int i = 0; i < cols; ++i) out += "," + std::to_string(hist[static_cast<size_t>(i)][static_cast<size_t>(b)]);
      const double dens = static_cast<double>(hist[0][static_cast<size_t>(b)]) / (count * w);
      out += "," + io::fmt(dens) + "," + io::fmt(hs_lambda1_density((b + 0.5) * w)) + "\n";
    }
    emit(c, out);
    return 0;
  }
  json j = {{"samples", count}, {"seed", c.seed}, {"bins", bins}, {"mean_lambda1", mean1},
            {"analytic_mean_lambda1", 1.0 / 64.0}};
  json h = json::object();
  for (int i = 0; i < cols; ++i) h[names[i]] = hist[static_cast<size_t>(i)];
  j["counts"] = h;
  std::vector<double> centers, analytic;
  for (int b = 0; b < bins; ++b) {
    centers.push_back((b + 0.5) * w);
    analytic.push_back(hs_lambda1_density((b + 0.5) * w));
  }
  j["bin_centers"] = centers;
  j["p_lambda1"] = analytic;
  emit(c, j.dump(2) + "\n");
  return 0;
}

int cmd_discriminate(const Common& c, const FamilyArgs& f, const std::string& u1f, const std::string& u2f,
                     bool have_angles) {
  Verdict v;
  json j;
  if (!u1f.empty() || !u2f.empty()) {
    if (u1f.empty() || u2f.empty()) throw DomainError("--u1 and --u2 go together");
    v = locally_distinguishable(io::read_matrix(u1f), io::read_matrix(u2f), seesaw(c));
    j = io::to_json(v);
  } else {
    if (!have_angles) throw DomainError("give --phi and --psi, or --u1 and --u2");
    const ComplexMatrix id(Mat::Identity(4, 4), TensorSpace({2, 2}));
    v = locally_distinguishable(id, vfam(f.phi, f.psi), seesaw(c));
    j = io::to_json(v);
    j["closed_form"] = distinguishable_closed_form(f.phi, f.psi);
    if (v.status == Status::violated && distinguishable_closed_form(f.phi, f.psi)) {
      const auto dv = discrimination_vector(f.phi, f.psi);
      j["vector"] = {{"t", dv.t}, {"s", dv.s}, {"residual", dv.residual}, {"state", io::to_json(dv.state)}};
    }
  }
  const bool ok = v.status == Status::violated;
  j["distinguishable"] = ok;
  emit_json(c, j);
  if (!ok) {
    std::cerr << "rr: not distinguishable\n";
    return static_cast<int>(ErrorKind::no_certificate);
  }
  return 0;
}

int cmd_moe(const Common& c, const ChannelArgs& ch) {
  const QuantumChannel q = build_channel(ch);
  const auto cfg = seesaw(c);
  const auto r = moe_qubit(q, cfg);
  const auto z = moe_is_zero(q, cfg);
  emit_json(c, {{"moe_bits", r.value},
                {"lambda_min", r.lambda},
                {"witness", io::to_json(r.witness)},
                {"zero", io::to_json(z)}});
  return 0;
}

int cmd_positivity(const Common& c, const ChannelArgs& ch, int k) {
  emit_json(c, io::to_json(is_k_positive(build_choi(ch), k, seesaw(c))));
  return 0;
}

int cmd_choi(const Common& c, const ChannelArgs& ch) {
  emit_json(c, io::choi_json(build_choi(ch)));
  return 0;
}

int cmd_distill(const Common& c, const std::string& state, const std::string& family, double p, int n) {
  DensityMatrix rho;
  if (!state.empty()) {
    const ComplexMatrix m = io::read_matrix(state);
    rho = DensityMatrix(HermitianMatrix(m));
  } else if (family == "bell" || family == "werner") {
    Vec v = Vec::Zero(4);
    v(0) = v(3) = 1.0 / std::sqrt(2.0);
    const double w = family == "bell" ? 1.0 : p;
    if (!(w >= 0.0 && w <= 1.0)) throw DomainError("werner weight must lie in [0, 1]");
    rho = DensityMatrix(Mat(w * v * v.adjoint() + (1 - w) * Mat::Identity(4, 4) / 4.0), TensorSpace({2, 2}));
  } else {
    throw DomainError("a state is required: --state FILE or --state-family bell|werner");
  }
  emit_json(c, io::to_json(n_copy_distillable_probe(rho, n, seesaw(c))));
  return 0;
}

int cmd_fidelity_lp(const Common& c, std::vector<double> weights, const std::vector<double>& lambda,
                    const std::string& input, bool full) {
  std::vector<double> lam = lambda;
  if (!input.empty()) {
    const json j = io::parse_json(io::read_file(input));
    try {
      weights.clear();
      for (const auto& row : j.at("p"))
        for (const auto& v : row) weights.push_back(v.get<double>());
      lam = j.at("lambda").get<std::vector<double>>();
    } catch (const json::exception& e) {
      throw DomainError(std::string("fidelity LP input: ") + e.what());
    }
  }
  const int n = static_cast<int>(lam.size());
  if (n < 1) throw DomainError("--lambda is required");
  if (static_cast<int>(weights.size()) != n * n) throw DimensionError("--weights needs N^2 entries, N = |lambda|");
  Eigen::MatrixXd p(n, n);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) p(i, k) = weights[static_cast<size_t>(i * n + k)];
  const Eigen::VectorXd l = Eigen::Map<const Eigen::VectorXd>(lam.data(), n);
  const auto r = diagonal_fidelity_lp(p, l, full);
  std::vector<std::vector<double>> b(static_cast<size_t>(n), std::vector<double>(static_cast<size_t>(n)));
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) b[static_cast<size_t>(i)][static_cast<size_t>(k)] = r.b(i, k);
  emit_json(c, {{"bound", r.bound},
                {"B", b},
                {"constraints", r.constraints},
                {"rounds", r.rounds},
                {"residual", r.residual},
                {"status", to_string(r.status)}});
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"restricted numerical ranges of operators on tensor-product spaces"};
  app.require_subcommand(1);
  Common common;
  FamilyArgs fam;
  ChannelArgs chan;

  auto* range = app.add_subcommand("range", "numerical range (field of values)");
  auto* pnr = app.add_subcommand("pnr", "product numerical range");
  auto* sep = app.add_subcommand("sep-range", "separable numerical range");
  auto* kr = app.add_subcommand("k-range", "k-entangled numerical range of a Hermitian operator");
  bool closed_form = false;
  pnr->add_flag("--closed-form", closed_form, "closed-form interval (xts, dfam)");
  int k = 1;
  kr->add_option("--k", k, "Schmidt rank bound")->capture_default_str();
  for (auto* s : {range, pnr, sep, kr}) {
    add_common(s, common);
    add_family(s, fam);
  }

  auto* mink = app.add_subcommand("minkowski-power", "product range of U^{(x) n} for U = diag(1, e^{i phi})");
  double mphi = 0.0;
  int mn = 1;
  bool analytic = false;
  mink->add_option("--phi", mphi)->required();
  mink->add_option("--n", mn)->required();
  mink->add_flag("--analytic", analytic, "closed-form boundary instead of the Minkowski power");
  add_common(mink, common);

  auto* hs = app.add_subcommand("hs-ensemble", "HS-random two-qubit eigenvalue and product-range histograms");
  int hs_n = 10000, hs_bins = 100;
  bool skip_edges = false;
  hs->add_option("--n", hs_n, "sample count")->capture_default_str();
  hs->add_option("--bins", hs_bins, "histogram bins over [0, 1]")->capture_default_str();
  hs->add_flag("--skip-edges", skip_edges, "eigenvalues only");
  add_common(hs, common);

  auto* disc = app.add_subcommand("discriminate", "local distinguishability of two unitaries");
  std::string u1f, u2f;
  disc->add_option("--u1", u1f, "first unitary (matrix JSON with dims)");
  disc->add_option("--u2", u2f, "second unitary");
  auto* dphi = disc->add_option("--phi", fam.phi);
  auto* dpsi = disc->add_option("--psi", fam.psi);
  add_common(disc, common);

  auto* moe = app.add_subcommand("moe", "minimum output entropy of a qubit channel");
  auto* pos = app.add_subcommand("positivity", "k-positivity verdict of a map");
  auto* ch = app.add_subcommand("choi", "normalized Choi matrix of a channel");
  int pk = 1;
  pos->add_option("--k", pk)->capture_default_str();
  for (auto* s : {moe, pos, ch}) {
    add_common(s, common);
    add_channel(s, chan);
  }

  auto* dist = app.add_subcommand("distill", "n-copy distillability probe");
  std::string state, state_family;
  double wp = 0.5;
  int dn = 1;
  dist->add_option("--state", state, "density matrix JSON with dims");
  dist->add_option("--state-family", state_family)->check(CLI::IsMember({"bell", "werner"}));
  dist->add_option("--p", wp, "Werner weight")->capture_default_str();
  dist->add_option("--n", dn)->capture_default_str();
  add_common(dist, common);

  auto* flp = app.add_subcommand("fidelity-lp", "fidelity bound between a pure and a diagonal state");
  std::vector<double> weights, lambda;
  std::string lp_input;
  bool full = false;
  flp->add_option("--weights", weights, "p_ij row-major")->delimiter(',');
  flp->add_option("--lambda", lambda, "Schmidt coefficients")->delimiter(',');
  flp->add_option("--input", lp_input, "JSON {\"p\": [[..]], \"lambda\": [..]}");
  flp->add_flag("--full", full, "all subset constraints up front");
  add_common(flp, common);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : static_cast<int>(ErrorKind::parse);
  }

  try {
    if (*range) return cmd_range(common, fam);
    if (*pnr) return cmd_pnr(common, fam, closed_form);
    if (*sep) return cmd_sep_range(common, fam);
    if (*kr) return cmd_k_range(common, fam, k);
    if (*mink) return cmd_minkowski_power(common, mphi, mn, analytic);
    if (*hs) return cmd_hs_ensemble(common, hs_n, hs_bins, !skip_edges);
    if (*disc) return cmd_discriminate(common, fam, u1f, u2f, dphi->count() > 0 && dpsi->count() > 0);
    if (*moe) return cmd_moe(common, chan);
    if (*pos) return cmd_positivity(common, chan, pk);
    if (*ch) return cmd_choi(common, chan);
    if (*dist) return cmd_distill(common, state, state_family, wp, dn);
    if (*flp) return cmd_fidelity_lp(common, weights, lambda, lp_input, full);
  } catch (const Error& e) {
    std::cerr << "rr: " << e.what() << "\n";
    return e.exit_code();
  } catch (const io::json::exception& e) {
    std::cerr << "rr: " << e.what() << "\n";
    return static_cast<int>(ErrorKind::parse);
  } catch (const std::exception& e) {
    std::cerr << "rr: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
