#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "outer_rates/dynamics.hpp"
#include "outer_rates/intpoly.hpp"
#include "outer_rates/outer_geometry.hpp"
#include "outer_rates/report_io.hpp"
#include "outer_rates/roots.hpp"
#include "outer_rates/svg.hpp"
#include "outer_rates/traintrack.hpp"
#include "outer_rates/words.hpp"

using namespace outer_rates;

namespace {

int log_level() {
  const char* v = std::getenv("OUTER_RATES_LOG");
  return v ? std::atoi(v) : 0;
}

void logmsg(int level, const std::string& msg) {
  if (log_level() >= level) std::cerr << "[outer-rates] " << msg << "\n";
}

// k specs: "10", "10,100", "3..20", and mixes thereof.
std::vector<long long> parse_k_spec(const std::string& spec) {
  std::vector<long long> ks;
  std::size_t pos = 0;
  while (pos < spec.size()) {
    std::size_t comma = spec.find(',', pos);
    std::string tok = spec.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    std::size_t dots = tok.find("..");
    if (dots != std::string::npos) {
      long long a = std::stoll(tok.substr(0, dots));
      long long b = std::stoll(tok.substr(dots + 2));
      for (long long k = a; k <= b; ++k) ks.push_back(k);
    } else if (!tok.empty()) {
      ks.push_back(std::stoll(tok));
    }
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  if (ks.empty()) throw CLI::ValidationError("--k", "empty k specification");
  return ks;
}

void write_output(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::cout << content;
    if (content.empty() || content.back() != '\n') std::cout << "\n";
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << content;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

// Sweeps emit one document per parameter plus a small summary.
Json wrap_runs(Json runs) {
  if (runs.size() == 1) return runs[0];
  Json out;
  out["runs"] = runs;
  out["summary"] = Json{{"count", runs.size()}};
  return out;
}

struct Claim {
  std::string name;
  std::string status;  // PASS | FAIL | UNKNOWN | UNVERIFIED
  Json detail;
};

bool gates_forward_ok(int N, const GatePartition& g) {
  // One gate with every positive direction, N singleton inverse gates.
  if (static_cast<int>(g.gates.size()) != N + 1) return false;
  std::vector<int> pos;
  for (int i = 1; i <= N; ++i) pos.push_back(direction_code(i, false));
  bool found_pos = false;
  int singles = 0;
  for (const auto& gate : g.gates) {
    if (gate == pos) found_pos = true;
    else if (gate.size() == 1 && direction_is_inverse(gate[0])) ++singles;
  }
  return found_pos && singles == N;
}

bool gates_reverse_ok(int N, const GatePartition& g) {
  // N gates, each pairing a_{i+2 mod N} with the inverse of a_i.
  if (static_cast<int>(g.gates.size()) != N) return false;
  for (int i = 1; i <= N; ++i) {
    int j = (i + 1) % N + 1;  // i + 2 with wrap into 1..N
    int a = direction_code(j, false);
    int b = direction_code(i, true);
    if (!g.same_gate(a, b)) return false;
  }
  return true;
}

double max_rel_err(const std::vector<double>& got,
                   const std::vector<double>& want) {
  double m = 0;
  for (std::size_t i = 0; i < got.size(); ++i)
    m = std::max(m, std::abs(got[i] - want[i]) / std::abs(want[i]));
  return m;
}

// The full claim battery for one (N, k); every computational claim the
// library can certify, with UNKNOWN/UNVERIFIED kept distinct from FAIL.
std::vector<Claim> verify_claims(int N, long long k, const std::string& which) {
  std::vector<Claim> cs;
  bool do_p = which != "Q";
  bool do_q = which != "P";

  FamilyPair fam = shift_twist_family(N, k);
  cs.push_back({"family_inverse_check",
                fam.inverse_check.verified ? "PASS" : "FAIL",
                Json{{"witness", fam.inverse_check.witness}}});

  RootPositionsReport positions = verify_root_positions(N, k);
  cs.push_back({"root_positions", positions.all_pass() ? "PASS" : "FAIL",
                root_positions_json(positions)});

  if (do_p) {
    auto cert = certify_irreducible(N, k, PolyKind::P);
    cs.push_back({"irreducible_p",
                  cert.verdict == Verdict::IRREDUCIBLE ? "PASS"
                  : cert.verdict == Verdict::UNKNOWN   ? "UNKNOWN"
                                                       : "FAIL",
                  certificate_json(cert)});
  }
  if (do_q) {
    auto cert = certify_irreducible(N, k, PolyKind::Q);
    cs.push_back({"irreducible_q",
                  cert.verdict == Verdict::IRREDUCIBLE ? "PASS"
                  : cert.verdict == Verdict::UNKNOWN   ? "UNKNOWN"
                                                       : "FAIL",
                  certificate_json(cert)});
  }

  if (do_p) {
    SpectralReport sp = spectral_ratio(poly_family(N, k, PolyKind::P));
    bool ok = sp.ratio - sp.error_bound >= static_cast<double>(k);
    cs.push_back({"spectral_ratio_p_at_least_k", ok ? "PASS" : "FAIL",
                  spectral_json(sp)});
  }
  if (do_q) {
    SpectralReport sq = spectral_ratio(poly_family(N, k, PolyKind::Q));
    double bound = 1.0 + 1.0 / std::sqrt(static_cast<double>(k));
    bool ok = sq.ratio + sq.error_bound <= bound;
    cs.push_back({"spectral_ratio_q_below_bound", ok ? "PASS" : "FAIL",
                  spectral_json(sq)});
  }

  auto ttf = is_train_track(fam.forward);
  auto ttg = is_train_track(fam.reverse);
  cs.push_back({"train_track_forward", ttf.ok ? "PASS" : "FAIL", train_track_json(ttf)});
  cs.push_back({"train_track_reverse", ttg.ok ? "PASS" : "FAIL", train_track_json(ttg)});

  auto gf = gates(fam.forward);
  auto gg = gates(fam.reverse);
  cs.push_back({"gates_forward_structure", gates_forward_ok(N, gf) ? "PASS" : "FAIL", gates_json(gf)});
  cs.push_back({"gates_reverse_structure", gates_reverse_ok(N, gg) ? "PASS" : "FAIL", gates_json(gg)});

  auto wf = local_whitehead_graph(fam.forward);
  auto wg = local_whitehead_graph(fam.reverse);
  cs.push_back({"whitehead_forward_connected", wf.connected ? "PASS" : "FAIL",
                Json{{"edges", static_cast<int>(wf.edges.size())}}});
  cs.push_back({"whitehead_reverse_connected", wg.connected ? "PASS" : "FAIL",
                Json{{"edges", static_cast<int>(wg.edges.size())}}});

  IntMatrix A = transition_matrix(fam.forward);
  IntMatrix B = transition_matrix(fam.reverse);
  auto pa = is_primitive(A);
  auto pb = is_primitive(B);
  cs.push_back({"primitive_forward", pa.primitive ? "PASS" : "FAIL",
                Json{{"exponent", pa.exponent}}});
  cs.push_back({"primitive_reverse", pb.primitive ? "PASS" : "FAIL",
                Json{{"exponent", pb.exponent}}});

  AxisFamily ax = axis_points(N, k, 0, 1, 0, 1);
  {
    std::vector<double> want(static_cast<std::size_t>(N));
    for (int i = 0; i < N; ++i)
      want[static_cast<std::size_t>(i)] = std::pow(ax.lambda, N - 1 - i);
    if (pa.primitive) {
      PFData pf = pf_eigen(A);
      double err = max_rel_err(pf.v, want);
      cs.push_back({"eigenvector_forward", err <= 1e-9 ? "PASS" : "FAIL",
                    Json{{"max_rel_err", num(err)}, {"method", "power_iteration"}}});
    }
  }
  {
    std::vector<double> want(static_cast<std::size_t>(N));
    for (int i = 0; i < N; ++i)
      want[static_cast<std::size_t>(i)] = std::pow(ax.lambda_bar, i);
    if (pb.primitive) {
      PFData pf = pf_eigen(B);
      double err = max_rel_err(pf.v, want);
      cs.push_back({"eigenvector_reverse", err <= 1e-9 ? "PASS" : "FAIL",
                    Json{{"max_rel_err", num(err)}, {"method", "power_iteration"}}});
    } else {
      // Imprimitive reverse matrix (even N): certify the displayed vector by
      // its residual instead of power iteration.
      double res = 0, vmax = 0;
      for (int i = 0; i < N; ++i) {
        double mi = 0;
        for (int j = 0; j < N; ++j)
          mi += static_cast<double>(B[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]) *
                want[static_cast<std::size_t>(j)];
        res = std::max(res, std::abs(mi - ax.lambda_bar * want[static_cast<std::size_t>(i)]));
        vmax = std::max(vmax, want[static_cast<std::size_t>(i)]);
      }
      bool ok = res <= 1e-9 * ax.lambda_bar * vmax;
      cs.push_back({"eigenvector_reverse", ok ? "PASS" : "FAIL",
                    Json{{"residual", num(res)}, {"method", "exact_vector_residual"}}});
    }
  }

  {
    double dx = lipschitz_distance(ax.x(0), ax.x(1)).log_distance;
    double dy = lipschitz_distance(ax.y(0), ax.y(1)).log_distance;
    bool okx = std::abs(dx - std::log(ax.lambda)) <= 1e-9;
    bool oky = std::abs(dy - std::log(ax.lambda_bar)) <= 1e-9;
    cs.push_back({"translation_length_forward", okx ? "PASS" : "FAIL",
                  Json{{"d", num(dx)}, {"log_lambda", num(std::log(ax.lambda))}}});
    cs.push_back({"translation_length_reverse", oky ? "PASS" : "FAIL",
                  Json{{"d", num(dy)}, {"log_lambda_bar", num(std::log(ax.lambda_bar))}}});

    FormulaValue fv = axis_distance_formula(N, k);
    LipschitzResult d00 = lipschitz_distance(ax.x(0), ax.y(0));
    bool consistent = std::abs(fv.value - d00.log_distance) <= 1e-9;
    cs.push_back({"axis_distance_formula_consistency",
                  consistent ? "PASS" : "FAIL",
                  Json{{"formula", num(fv.value)},
                       {"candidates", num(d00.log_distance)},
                       {"witness", d00.witness.to_text()}}});
    double lower =
        (static_cast<double>(N) - 1.0) * std::log(static_cast<double>(k)) - 4.0;
    cs.push_back({"axis_distance_lower_bound",
                  fv.value >= lower ? "PASS" : "FAIL",
                  Json{{"value", num(fv.value)}, {"bound", num(lower)}}});
  }

  cs.push_back({"nielsen_path_hypothesis", "UNVERIFIED",
                Json{{"note", "periodic Nielsen path detection is out of scope"}}});
  return cs;
}

Json claims_json(const std::vector<Claim>& cs) {
  Json arr = Json::array();
  for (const auto& c : cs) {
    Json j;
    j["claim"] = c.name;
    j["status"] = c.status;
    j["detail"] = c.detail;
    arr.push_back(j);
  }
  return arr;
}

bool claims_ok(const std::vector<Claim>& cs) {
  for (const auto& c : cs)
    if (c.status == "FAIL") return false;
  return true;
}

std::string matrix_tsv(const IntMatrix& m) {
  std::string out;
  for (const auto& row : m) {
    for (std::size_t j = 0; j < row.size(); ++j) {
      if (j) out += "\t";
      out += std::to_string(row[j]);
    }
    out += "\n";
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"outer-rates: construct the rank-N shift-twist automorphism "
               "family, certify its polynomial/train-track/axis facts, and "
               "emit machine-readable reports"};
  app.require_subcommand(1);

  int N = 3;
  std::string k_spec = "10";
  std::string format = "json";
  std::string out_path;
  std::string which = "both";
  double tol = 1e-12;
  int window = 4;
  int iters = 12;
  unsigned p_max = 50;
  unsigned seed = 1;
  std::string figure = "poly";
  std::string poly_text;
  std::string ns_spec = "3,5,7,9,11,13";
  double xmin = -12, xmax = 12;

  auto add_common = [&](CLI::App* cmd, bool needs_k = true) {
    cmd->add_option("--N", N, "rank of the free group (>= 3)");
    if (needs_k)
      cmd->add_option("--k", k_spec,
                      "twist parameter; list (10,100) and range (3..20) accepted");
    cmd->add_option("--format", format, "json | tsv | svg");
    cmd->add_option("--out", out_path, "output path (default stdout)");
    cmd->add_option("--tol", tol, "numeric tolerance for root finding");
    cmd->add_option("--seed", seed, "seed reserved for sampled subcommands");
  };

  auto* c_family = app.add_subcommand(
      "family", "automorphism pair, inverse check, transition matrices, "
                "characteristic polynomials");
  add_common(c_family);
  auto* c_poly =
      app.add_subcommand("poly", "family polynomials with irreducibility certificates");
  add_common(c_poly);
  c_poly->add_option("--which", which, "P | Q | both");
  c_poly->add_option("--p-max", p_max, "largest prime tried for modular certificates");
  auto* c_roots = app.add_subcommand(
      "roots", "root report: approximations, disk count, certified brackets");
  add_common(c_roots);
  c_roots->add_option("--which", which, "P | Q | both");
  c_roots->add_option("--poly", poly_text, "explicit polynomial, e.g. \"x^2 - 1\"");
  auto* c_verify = app.add_subcommand(
      "verify", "run every certifiable claim at (N, k); exit 0 iff none fail");
  add_common(c_verify);
  c_verify->add_option("--which", which, "restrict polynomial claims to P or Q");
  auto* c_table =
      app.add_subcommand("table", "audit the shipped modular-certificate table");
  c_table->add_option("--Ns", ns_spec, "comma list of odd ranks");
  c_table->add_option("--p-max", p_max, "largest prime tried");
  c_table->add_option("--format", format, "json | tsv");
  c_table->add_option("--out", out_path, "output path");
  auto* c_tt = app.add_subcommand(
      "traintrack", "gates, taken turns, Whitehead graphs, Perron-Frobenius data");
  add_common(c_tt);
  auto* c_axes =
      app.add_subcommand("axes", "axis separation grid and lower bound (k >= 5)");
  add_common(c_axes);
  c_axes->add_option("--window", window,
                     "grid window M: cells (i, j) with |i|,|j| <= M");
  auto* c_dyn =
      app.add_subcommand("dynamics", "projective convergence rates vs spectral ratios");
  add_common(c_dyn);
  c_dyn->add_option("--iters", iters, "trajectory iterations");
  auto* c_plot = app.add_subcommand(
      "plot", "deterministic SVG: polynomial curves or root scatter");
  add_common(c_plot);
  c_plot->add_option("--figure", figure, "poly | roots");
  c_plot->add_option("--which", which, "P | Q (roots figure)");
  c_plot->add_option("--poly", poly_text, "explicit polynomial");
  c_plot->add_option("--xmin", xmin, "curve range start");
  c_plot->add_option("--xmax", xmax, "curve range end");

  CLI11_PARSE(app, argc, argv);

  try {
    std::vector<long long> ks = parse_k_spec(k_spec);

    if (c_family->parsed()) {
      Json runs = Json::array();
      for (long long k : ks) {
        logmsg(1, "family N=" + std::to_string(N) + " k=" + std::to_string(k));
        FamilyPair fam = shift_twist_family(N, k);
        IntMatrix A = transition_matrix(fam.forward);
        IntMatrix B = transition_matrix(fam.reverse);
        if (format == "tsv") {
          write_output(out_path, matrix_tsv(A) + "\n" + matrix_tsv(B));
          continue;
        }
        Json j = family_json(fam);
        j["transition_forward"] = matrix_json(A);
        j["transition_reverse"] = matrix_json(B);
        j["char_poly_forward"] = char_poly(A).to_string();
        j["char_poly_reverse"] = char_poly(B).to_string();
        runs.push_back(j);
      }
      if (format != "tsv")
        write_output(out_path,
                     dump(wrap_runs(runs)));
      return 0;
    }

    if (c_poly->parsed()) {
      Json runs = Json::array();
      for (long long k : ks) {
        Json j;
        j["N"] = N;
        j["k"] = k;
        if (which != "Q")
          j["p"] = Json{
              {"polynomial", poly_family(N, k, PolyKind::P).to_string()},
              {"certificate",
               certificate_json(certify_irreducible(N, k, PolyKind::P, p_max))}};
        if (which != "P")
          j["q"] = Json{
              {"polynomial", poly_family(N, k, PolyKind::Q).to_string()},
              {"certificate",
               certificate_json(certify_irreducible(N, k, PolyKind::Q, p_max))}};
        runs.push_back(j);
      }
      write_output(out_path,
                   dump(wrap_runs(runs)));
      return 0;
    }

    if (c_roots->parsed()) {
      Json runs = Json::array();
      std::vector<IntPolynomial> polys;
      std::vector<std::string> names;
      if (!poly_text.empty()) {
        polys.push_back(IntPolynomial::parse(poly_text));
        names.push_back(poly_text);
      } else {
        for (long long k : ks) {
          if (which != "Q") {
            polys.push_back(poly_family(N, k, PolyKind::P));
            names.push_back("P k=" + std::to_string(k));
          }
          if (which != "P") {
            polys.push_back(poly_family(N, k, PolyKind::Q));
            names.push_back("Q k=" + std::to_string(k));
          }
        }
      }
      for (std::size_t i = 0; i < polys.size(); ++i) {
        RootReport rep = root_report(polys[i], tol);
        if (format == "svg") {
          std::vector<std::complex<double>> zs;
          for (const auto& r : rep.roots) zs.push_back(r.z);
          write_output(out_path, svg_root_scatter(zs));
          return 0;
        }
        Json j;
        j["name"] = names[i];
        j["polynomial"] = polys[i].to_string();
        j.update(root_report_json(rep));
        runs.push_back(j);
      }
      write_output(out_path,
                   dump(wrap_runs(runs)));
      return 0;
    }

    if (c_verify->parsed()) {
      Json runs = Json::array();
      bool all_ok = true;
      for (long long k : ks) {
        logmsg(1, "verify N=" + std::to_string(N) + " k=" + std::to_string(k));
        auto cs = verify_claims(N, k, which == "both" ? "" : which);
        bool ok = claims_ok(cs);
        all_ok = all_ok && ok;
        Json j;
        j["N"] = N;
        j["k"] = k;
        j["claims"] = claims_json(cs);
        j["all_pass"] = ok;
        runs.push_back(j);
      }
      Json out = runs.size() == 1
                     ? runs[0]
                     : Json{{"runs", runs}, {"summary", Json{{"all_pass", all_ok}}}};
      write_output(out_path, dump(out));
      return all_ok ? 0 : 1;
    }

    if (c_table->parsed()) {
      std::vector<int> Ns;
      for (long long v : parse_k_spec(ns_spec)) Ns.push_back(static_cast<int>(v));
      auto rows = audit_certificate_table(Ns, p_max);
      if (format == "tsv") {
        std::string out = "N\treference\treference_valid\trecomputed\tstatus\n";
        for (const auto& r : rows) {
          out += std::to_string(r.N) + "\t";
          out += r.reference ? "(" + std::to_string(r.reference->first) + "," +
                                   std::to_string(r.reference->second) + ")"
                             : "-";
          out += "\t" + std::string(r.reference_valid ? "yes" : "no") + "\t";
          out += r.recomputed ? "(" + std::to_string(r.recomputed->first) + "," +
                                    std::to_string(r.recomputed->second) + ")"
                              : "none <= p_max";
          out += "\t" + r.status + "\n";
        }
        write_output(out_path, out);
      } else {
        write_output(out_path, dump(audit_json(rows)));
      }
      return 0;
    }

    if (c_tt->parsed()) {
      Json runs = Json::array();
      for (long long k : ks) {
        FamilyPair fam = shift_twist_family(N, k);
        IntMatrix A = transition_matrix(fam.forward);
        IntMatrix B = transition_matrix(fam.reverse);
        Json j;
        j["N"] = N;
        j["k"] = k;
        j["convention"] = "entry (i,j) counts a_j^{+-1} in the image of a_i";
        j["forward"] = Json{
            {"matrix", matrix_json(A)},
            {"char_poly", char_poly(A).to_string()},
            {"gates", gates_json(gates(fam.forward))},
            {"taken_turns", turns_json(taken_turns(fam.forward))},
            {"train_track", train_track_json(is_train_track(fam.forward))},
            {"whitehead", whitehead_json(local_whitehead_graph(fam.forward))}};
        j["reverse"] = Json{
            {"matrix", matrix_json(B)},
            {"char_poly", char_poly(B).to_string()},
            {"gates", gates_json(gates(fam.reverse))},
            {"taken_turns", turns_json(taken_turns(fam.reverse))},
            {"train_track", train_track_json(is_train_track(fam.reverse))},
            {"whitehead", whitehead_json(local_whitehead_graph(fam.reverse))}};
        auto pa = is_primitive(A);
        auto pb = is_primitive(B);
        j["forward"]["primitive"] =
            Json{{"primitive", pa.primitive}, {"exponent", pa.exponent}};
        j["reverse"]["primitive"] =
            Json{{"primitive", pb.primitive}, {"exponent", pb.exponent}};
        if (pa.primitive) j["forward"]["pf"] = pf_json(pf_eigen(A));
        if (pb.primitive) j["reverse"]["pf"] = pf_json(pf_eigen(B));
        j["full_irreducibility"] =
            full_irreducibility_json(full_irreducibility_report(N, k));
        runs.push_back(j);
      }
      write_output(out_path,
                   dump(wrap_runs(runs)));
      return 0;
    }

    if (c_axes->parsed()) {
      Json runs = Json::array();
      for (long long k : ks) {
        logmsg(1, "axes N=" + std::to_string(N) + " k=" + std::to_string(k));
        SeparationReport rep = axis_separation_report(N, k, window);
        if (format == "tsv") {
          std::string out;
          for (const auto& row : rep.grid) {
            for (std::size_t j = 0; j < row.size(); ++j) {
              if (j) out += "\t";
              char buf[32];
              std::snprintf(buf, sizeof buf, "%.12f", row[j].distance);
              out += buf;
            }
            out += "\n";
          }
          write_output(out_path, out);
          continue;
        }
        Json j = separation_json(rep);
        j["formula"] = num(axis_distance_formula(N, k).value);
        runs.push_back(j);
      }
      if (format != "tsv")
        write_output(out_path,
                     dump(wrap_runs(runs)));
      return 0;
    }

    if (c_dyn->parsed()) {
      Json runs = Json::array();
      for (long long k : ks) {
        FamilyPair fam = shift_twist_family(N, k);
        std::vector<Word> win;
        for (int g = 1; g <= N; ++g) win.push_back(Word::generator(N, g));
        RosePoint base = uniform_rose(N);
        LengthTrajectory tf = iterate_lengths(fam.forward, win, iters, base, 20000000LL);
        LengthTrajectory tg = iterate_lengths(fam.reverse, win, iters, base, 20000000LL);
        if (format == "tsv" || format == "csv") {
          std::string out = "map\tn\tclass\tlength\n";
          auto emit = [&out](const char* name, const LengthTrajectory& t) {
            for (std::size_t n = 0; n < t.rows.size(); ++n)
              for (std::size_t c = 0; c < t.window.size(); ++c) {
                char buf[32];
                std::snprintf(buf, sizeof buf, "%.12g", t.rows[n][c]);
                out += std::string(name) + "\t" + std::to_string(n) + "\t" +
                       t.window[c].to_text() + "\t" + buf + "\n";
              }
          };
          emit("forward", tf);
          emit("reverse", tg);
          write_output(out_path, out);
          continue;
        }
        Json j;
        j["N"] = N;
        j["k"] = k;
        j["forward_trajectory"] = trajectory_json(tf);
        j["reverse_trajectory"] = trajectory_json(tg);
        j["spectral_ratio_p"] = spectral_json(spectral_ratio(poly_family(N, k, PolyKind::P)));
        j["spectral_ratio_q"] = spectral_json(spectral_ratio(poly_family(N, k, PolyKind::Q)));
        IntMatrix A = transition_matrix(fam.forward);
        j["power_rate_forward"] = rate_json(power_rate(A));
        IntMatrix B = transition_matrix(fam.reverse);
        if (is_primitive(B).primitive)
          j["power_rate_reverse"] = rate_json(power_rate(B));
        try {
          j["projective_rate_forward"] = rate_json(projective_rate(tf));
        } catch (const std::exception& e) {
          j["projective_rate_forward"] = Json{{"error", e.what()}};
        }
        try {
          j["projective_rate_reverse"] = rate_json(projective_rate(tg));
        } catch (const std::exception& e) {
          j["projective_rate_reverse"] = Json{{"error", e.what()}};
        }
        runs.push_back(j);
      }
      if (format != "tsv" && format != "csv")
        write_output(out_path,
                     dump(wrap_runs(runs)));
      return 0;
    }

    if (c_plot->parsed()) {
      if (figure == "roots") {
        IntPolynomial f =
            !poly_text.empty()
                ? IntPolynomial::parse(poly_text)
                : poly_family(N, ks.front(),
                              which == "Q" ? PolyKind::Q : PolyKind::P);
        std::vector<std::complex<double>> zs;
        for (const auto& r : find_roots(f, tol)) zs.push_back(r.z);
        write_output(out_path, svg_root_scatter(zs));
        return 0;
      }
      std::vector<CurveSpec> curves;
      if (!poly_text.empty()) {
        curves.push_back(
            {poly_text, "red", IntPolynomial::parse(poly_text).coeffs_double()});
      } else {
        // Two k values plot P at the first and Q at the second.
        long long kp = ks.front();
        long long kq = ks.size() > 1 ? ks[1] : ks.front();
        curves.push_back({"P k=" + std::to_string(kp), "red",
                          poly_family(N, kp, PolyKind::P).coeffs_double()});
        curves.push_back({"Q k=" + std::to_string(kq), "blue",
                          poly_family(N, kq, PolyKind::Q).coeffs_double()});
      }
      write_output(out_path, svg_poly_plot(curves, xmin, xmax));
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "outer-rates: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
