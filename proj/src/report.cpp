#include "rarebasis/report.hpp"

#include <sstream>

namespace rarebasis {

Json json_value(const Dyadic& d) {
  Json j;
  j["mantissa"] = d.mantissa().str();
  j["exponent"] = d.exponent();
  j["decimal"] = d.to_decimal();
  return j;
}

Json json_value(const ExactRatio& r) {
  Json j;
  j["num"] = r.num.str();
  j["den"] = r.den.str();
  j["decimal"] = r.to_double();
  return j;
}

namespace {

Json tuples_json(const std::vector<Tuple>& tuples) {
  Json j = Json::array();
  for (const Tuple& t : tuples) j.push_back(t);
  return j;
}

}  // namespace

Json to_json(const VerificationReport& report) {
  Json j;
  j["n"] = report.n;
  j["k"] = report.k;
  j["family"] = report.family;
  j["sequences"] = tuples_json(report.sequences);
  j["omega"] = Json{{"requested", report.requested_omega_card},
                    {"realized", report.realized_omega_card},
                    {"dropped", tuples_json(report.dropped_tuples)}};
  j["e_measure"] = json_value(report.e_measure);
  j["union_measure"] = json_value(report.union_measure);
  j["bound"] = json_value(report.bound);
  j["achieved_ratio"] = json_value(report.achieved_ratio);
  j["pass"] = report.pass;
  if (report.alpha) {
    j["alpha"] = json_value(*report.alpha);
    j["achieved_constant"] = json_value(*report.achieved_constant);
  }
  if (report.omega_density) j["omega_density"] = json_value(*report.omega_density);
  if (report.achieved_c) j["achieved_c"] = json_value(*report.achieved_c);
  Json oracle;
  if (report.oracle_union_match) {
    oracle["ran"] = true;
    oracle["union_match"] = *report.oracle_union_match;
    if (report.containment_ok) oracle["containment"] = *report.containment_ok;
  } else {
    oracle["ran"] = false;
  }
  if (report.oracle_note) oracle["note"] = *report.oracle_note;
  j["oracle"] = oracle;
  j["warnings"] = report.warnings;
  return j;
}

Json to_json(const DensityReport& report) {
  Json j;
  Json coords = Json::array();
  for (const auto& c : report.coords) {
    Json cj;
    cj["coord"] = c.coord;
    cj["budget"] = c.budget;
    if (c.achievable) {
      cj["achieved"] = c.achieved;
    } else {
      cj["achieved"] = "unbounded";
    }
    cj["sections"] = c.sections;
    cj["pass"] = c.pass;
    if (c.failing_prefix) cj["failing_prefix"] = *c.failing_prefix;
    if (c.failing_point) cj["failing_point"] = *c.failing_point;
    coords.push_back(cj);
  }
  j["coords"] = coords;
  j["dense"] = report.dense;
  return j;
}

Json to_json(const ExtractionResult& result) {
  Json j;
  j["ok"] = result.ok;
  j["sequences"] = tuples_json(result.sequences);
  j["net_constants"] = result.net_constants;
  if (!result.ok) {
    j["error"] = result.error;
    j["blocking_coord"] = result.blocking_coord;
    j["unrealized"] = tuples_json(result.unrealized);
  }
  return j;
}

Json to_json(const CompletenessResult& result) {
  Json j;
  j["complete"] = result.complete;
  j["realized"] = tuples_json(result.realized.tuples);
  j["unrealized"] = tuples_json(result.unrealized);
  Json witnesses = Json::array();
  for (const auto& [tuple, witness] : result.witness) {
    witnesses.push_back(Json{{"tuple", tuple}, {"spectrum", witness}});
  }
  j["witnesses"] = witnesses;
  return j;
}

Json to_json(const IsPropertyReport& report) {
  auto pairs_json = [](const std::vector<std::pair<ShapePair, ShapePair>>& pairs) {
    Json arr = Json::array();
    for (const auto& [a, b] : pairs) {
      arr.push_back(Json{{"a", {a.p, a.q}}, {"b", {b.p, b.q}}});
    }
    return arr;
  };
  Json j;
  j["pass"] = report.pass;
  j["comparability_violations"] = pairs_json(report.comparability_violations);
  j["closure_violations"] = pairs_json(report.closure_violations);
  return j;
}

Json to_json(const ContainmentReport& report) {
  Json j;
  j["ok"] = report.ok;
  j["union_cells"] = report.union_cells;
  j["marked_cells"] = report.marked_cells;
  if (report.first_failure) j["first_failure"] = *report.first_failure;
  return j;
}

Json to_json(const LadderReport& report) {
  Json j;
  j["pass"] = report.pass;
  j["intervals_checked"] = report.intervals_checked;
  if (report.counterexample) j["counterexample"] = report.counterexample->describe();
  return j;
}

Json to_json(const CardinalityReport& report) {
  Json j;
  j["n"] = report.n;
  j["k"] = report.k;
  j["cardinality"] = report.cardinality.str();
  j["upper"] = report.upper.str();
  j["ratio"] = json_value(report.ratio);
  j["upper_ok"] = report.upper_ok;
  return j;
}

std::string verification_text(const VerificationReport& report) {
  std::ostringstream out;
  auto line = [&](const std::string& key, const std::string& value) {
    out << key;
    for (std::size_t i = key.size(); i < 18; ++i) out << ' ';
    out << value << "\n";
  };
  line("n", std::to_string(report.n));
  line("k", std::to_string(report.k));
  line("family", report.family);
  for (std::size_t j = 0; j < report.sequences.size(); ++j) {
    std::string s;
    for (std::int64_t v : report.sequences[j]) s += std::to_string(v) + " ";
    line("scales" + std::to_string(j + 1), s);
  }
  line("omega", std::to_string(report.realized_omega_card) + "/" +
                    std::to_string(report.requested_omega_card) + " realized");
  line("|E|", report.e_measure.to_string() + " = " + report.e_measure.to_decimal());
  line("union", report.union_measure.to_string() + " = " + report.union_measure.to_decimal());
  line("bound", report.bound.to_string() + " = " + report.bound.to_decimal());
  line("ratio", report.achieved_ratio.to_string() + " = " + report.achieved_ratio.to_decimal());
  if (report.alpha) {
    line("alpha", report.alpha->to_string() + " = " + report.alpha->to_decimal());
    line("constant", report.achieved_constant->to_string());
  }
  if (report.omega_density) line("omega_density", report.omega_density->to_string());
  if (report.achieved_c) line("achieved_c", report.achieved_c->to_string());
  if (report.oracle_union_match) {
    line("oracle_union", *report.oracle_union_match ? "match" : "MISMATCH");
    if (report.containment_ok) line("containment", *report.containment_ok ? "ok" : "FAIL");
  } else if (report.oracle_note) {
    line("oracle", *report.oracle_note);
  }
  for (const std::string& w : report.warnings) line("warning", w);
  line("pass", report.pass ? "yes" : "no");
  return out.str();
}

}  // namespace rarebasis
