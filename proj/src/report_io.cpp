#include "outer_rates/report_io.hpp"

#include <cstdio>
#include <cstdlib>

namespace outer_rates {

double round15(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  return std::strtod(buf, nullptr);
}

Json num(double v) { return Json(round15(v)); }

Json word_json(const Word& w) { return Json(w.to_text()); }

Json automorphism_json(const Automorphism& a) {
  Json j = Json::object();
  for (int g = 1; g <= a.rank(); ++g)
    j["a" + std::to_string(g)] = a.image(g).to_text();
  return j;
}

Json family_json(const FamilyPair& fam) {
  Json j;
  j["rank"] = fam.forward.rank();
  j["forward"] = automorphism_json(fam.forward);
  j["reverse"] = automorphism_json(fam.reverse);
  j["inverse_check"] = Json{{"verified", fam.inverse_check.verified},
                            {"witness", fam.inverse_check.witness}};
  return j;
}

Json matrix_json(const IntMatrix& m) {
  Json rows = Json::array();
  for (const auto& r : m) rows.push_back(r);
  return rows;
}

Json certificate_json(const IrreducibilityCertificate& c) {
  Json j;
  j["verdict"] = to_string(c.verdict);
  j["method"] = to_string(c.method);
  if (c.prime) j["prime"] = *c.prime;
  if (c.residue) j["residue"] = *c.residue;
  if (c.factor) j["factor"] = c.factor->to_string();
  j["note"] = c.note;
  return j;
}

Json bracket_json(const CertifiedBracket& b) {
  Json j;
  j["lo"] = b.lo_num.to_string() + "/" + b.den.to_string();
  j["hi"] = b.hi_num.to_string() + "/" + b.den.to_string();
  j["mid"] = num(b.mid());
  j["width"] = num(b.width());
  j["steps"] = b.steps;
  if (b.exact_root_hit) j["exact_root_hit"] = true;
  return j;
}

Json root_report_json(const RootReport& r) {
  Json roots = Json::array();
  for (const auto& ra : r.roots) {
    roots.push_back(Json{{"re", num(ra.z.real())},
                         {"im", num(ra.z.imag())},
                         {"modulus", num(std::abs(ra.z))},
                         {"residual", num(ra.residual)}});
  }
  Json brackets = Json::array();
  for (const auto& b : r.real_brackets) brackets.push_back(bracket_json(b));
  Json j;
  j["roots"] = roots;
  if (r.winding_available) {
    j["count_in_unit_disk"] = r.count_in_unit_disk;
    j["winding_matches_moduli"] = r.winding_matches_moduli;
  } else {
    j["count_in_unit_disk"] = nullptr;
    j["winding_note"] = r.winding_note;
  }
  j["real_brackets"] = brackets;
  j["largest_modulus"] = num(r.largest_modulus);
  j["second_modulus"] = num(r.second_modulus);
  return j;
}

Json root_positions_json(const RootPositionsReport& r) {
  Json j;
  j["N"] = r.N;
  j["k"] = r.k;
  j["p_inside_disk"] = Json{{"expected", r.N - 1},
                            {"computed", r.p_inside},
                            {"pass", r.p_count_ok}};
  j["q_inside_disk"] = Json{{"expected", r.N - 2},
                            {"computed", r.q_inside},
                            {"pass", r.q_count_ok}};
  j["p_real_bracket"] = bracket_json(r.p_bracket);
  j["q_real_bracket_pos"] = bracket_json(r.q_bracket_pos);
  j["q_real_bracket_neg"] = bracket_json(r.q_bracket_neg);
  j["p_winding_matches_moduli"] = r.p_winding_matches_moduli;
  j["q_winding_matches_moduli"] = r.q_winding_matches_moduli;
  j["all_pass"] = r.all_pass();
  return j;
}

Json spectral_json(const SpectralReport& s) {
  Json j;
  j["lambda"] = num(s.lambda);
  j["second"] = num(s.second);
  j["ratio"] = num(s.ratio);
  j["error_bound"] = num(s.error_bound);
  j["unresolved_tie"] = s.unresolved_tie;
  return j;
}

Json gates_json(const GatePartition& g) {
  Json out = Json::array();
  for (const auto& gate : g.gates) {
    Json names = Json::array();
    for (int d : gate) names.push_back(direction_name(d));
    out.push_back(names);
  }
  return out;
}

Json turns_json(const std::vector<Turn>& ts) {
  Json out = Json::array();
  for (const Turn& t : ts)
    out.push_back(Json::array({direction_name(t.a), direction_name(t.b)}));
  return out;
}

Json whitehead_json(const WhiteheadGraph& w) {
  Json edges = Json::array();
  for (const auto& [a, b] : w.edges)
    edges.push_back(Json::array({direction_name(a), direction_name(b)}));
  return Json{{"edges", edges}, {"connected", w.connected}};
}

Json train_track_json(const TrainTrackCheck& t) {
  Json j;
  j["is_train_track"] = t.ok;
  if (t.witness)
    j["witness"] = Json{{"turn", Json::array({direction_name(t.witness->a),
                                              direction_name(t.witness->b)})},
                        {"kind", t.witness_kind}};
  return j;
}

Json pf_json(const PFData& p) {
  Json v = Json::array();
  for (double x : p.v) v.push_back(num(x));
  return Json{{"lambda", num(p.lambda)},
              {"eigenvector", v},
              {"residual", num(p.residual)},
              {"iterations", p.iterations}};
}

Json full_irreducibility_json(const FullIrreducibilityReport& r) {
  Json j;
  j["N"] = r.N;
  j["k"] = r.k;
  j["transition_matrix_convention"] =
      "entry (i,j) counts a_j^{+-1} in the image of a_i; eigenvectors act on "
      "column vectors";
  j["primitive_forward"] = Json{{"primitive", r.primitive_a.primitive},
                                {"exponent", r.primitive_a.exponent}};
  j["primitive_reverse"] = Json{{"primitive", r.primitive_b.primitive},
                                {"exponent", r.primitive_b.exponent}};
  j["whitehead_forward_connected"] = r.whitehead_f_connected;
  j["whitehead_reverse_connected"] = r.whitehead_g_connected;
  j["stretch_factors_differ"] = r.stretch_factors_differ;
  j["lambda_bracket"] = bracket_json(r.lambda_bracket);
  j["lambda_bar_bracket"] = bracket_json(r.lambda_bar_bracket);
  j["certificate_p"] = certificate_json(r.cert_p);
  j["certificate_q"] = certificate_json(r.cert_q);
  j["nielsen_path_hypothesis"] = r.nielsen_path_hypothesis;
  return j;
}

Json audit_json(const std::vector<AuditRow>& rows) {
  Json out = Json::array();
  for (const auto& r : rows) {
    Json j;
    j["N"] = r.N;
    if (r.reference)
      j["reference"] = Json{{"p", r.reference->first}, {"k'", r.reference->second}};
    j["reference_valid"] = r.reference_valid;
    if (r.recomputed)
      j["recomputed"] = Json{{"p", r.recomputed->first}, {"k'", r.recomputed->second}};
    else
      j["recomputed"] = "none <= p_max";
    j["status"] = r.status;
    out.push_back(j);
  }
  return out;
}

Json separation_json(const SeparationReport& r) {
  Json grid = Json::array();
  Json witnesses = Json::array();
  for (const auto& row : r.grid) {
    Json g = Json::array(), w = Json::array();
    for (const auto& cell : row) {
      g.push_back(num(cell.distance));
      w.push_back(cell.witness);
    }
    grid.push_back(g);
    witnesses.push_back(w);
  }
  Json j;
  j["N"] = r.N;
  j["k"] = r.k;
  j["window"] = r.window;
  j["log_lambda"] = num(r.log_lambda);
  j["log_lambda_bar"] = num(r.log_lambda_bar);
  j["grid"] = grid;
  j["witnesses"] = witnesses;
  j["argmin"] = Json::array({r.argmin_i, r.argmin_j});
  j["grid_min"] = num(r.grid_min);
  j["diagonal_argmin"] = r.diagonal_argmin;
  j["diagonal_min_value"] = num(r.diagonal_min_value);
  j["diagonal_min"] = r.diagonal_min;
  j["argmin_on_boundary"] = r.argmin_on_boundary;
  j["adjusted_min"] = num(r.adjusted_min);
  j["bound"] = num(r.bound);
  j["bound_satisfied"] = r.bound_satisfied;
  j["lambda_sanity"] = r.lambda_sanity;
  return j;
}

Json trajectory_json(const LengthTrajectory& t) {
  Json classes = Json::array();
  for (const auto& w : t.window) classes.push_back(w.to_text());
  Json rows = Json::array();
  for (const auto& row : t.rows) {
    Json r = Json::array();
    for (double v : row) r.push_back(num(v));
    rows.push_back(r);
  }
  return Json{{"classes", classes},
              {"rows", rows},
              {"n_max", t.n_max},
              {"overflowed", t.overflowed}};
}

Json rate_json(const RateEstimate& r) {
  return Json{{"ratio", num(r.ratio)},
              {"dispersion", num(r.dispersion)},
              {"usable", r.usable}};
}

}  // namespace outer_rates
