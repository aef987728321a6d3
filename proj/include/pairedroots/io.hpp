#pragma once

#include <fstream>

#include <json.hpp>

#include "pairedroots/subgroup.hpp"

namespace pairedroots {

using nlohmann::json;

inline constexpr const char* kSchemaTag = "paired-roots/1";

// ---------------------------------------------------------------------------
// Matrices

inline json mat_to_json(const Mat& m) {
  json rows = json::array();
  for (int i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline Mat mat_from_json(const json& j, const char* what) {
  if (!j.is_array() || j.empty() || !j[0].is_array())
    fail(errc::dimension_mismatch, std::string(what) + ": expected an array of rows");
  int rows = static_cast<int>(j.size());
  int cols = static_cast<int>(j[0].size());
  Mat m(rows, cols);
  for (int i = 0; i < rows; ++i) {
    if (static_cast<int>(j[i].size()) != cols)
      fail(errc::dimension_mismatch, std::string(what) + ": ragged rows");
    for (int k = 0; k < cols; ++k) m(i, k) = j[i][k].get<double>();
  }
  return m;
}

// ---------------------------------------------------------------------------
// Datum files. Two formats share the loader: a pairing-matrix datum
//
//   { "generators": [..], "pairing": [[..]..],
//     "embedding": { "alpha": [[..]..], "beta": [[..]..], "form": [[..]..] }?,
//     "tolerance": number? }
//
// and a Coxeter-matrix file { "coxeter_matrix": [[int..]..] } with 0 standing
// for an infinite bond.

inline CoxeterDatum datum_from_json(const json& j) {
  if (j.contains("coxeter_matrix")) {
    CoxeterMatrix m = j.at("coxeter_matrix").get<CoxeterMatrix>();
    std::vector<std::string> labels;
    if (j.contains("generators")) labels = j.at("generators").get<std::vector<std::string>>();
    CoxeterDatum datum = from_coxeter_matrix(m, std::move(labels));
    if (j.contains("tolerance")) datum.tolerance = j.at("tolerance").get<double>();
    return datum;
  }

  CoxeterDatum datum;
  datum.labels = j.at("generators").get<std::vector<std::string>>();
  datum.pairing = mat_from_json(j.at("pairing"), "pairing");
  const int n = datum.rank();
  if (datum.pairing.rows() != n || datum.pairing.cols() != n)
    fail(errc::dimension_mismatch, "pairing matrix does not match the generator count");
  if (j.contains("tolerance")) datum.tolerance = j.at("tolerance").get<double>();

  if (j.contains("embedding")) {
    const json& e = j.at("embedding");
    Embedding embedding;
    embedding.alpha_coords = mat_from_json(e.at("alpha"), "embedding.alpha");
    embedding.beta_coords = mat_from_json(e.at("beta"), "embedding.beta");
    embedding.ambient_form = mat_from_json(e.at("form"), "embedding.form");
    if (embedding.alpha_coords.rows() != n || embedding.beta_coords.rows() != n ||
        embedding.ambient_form.rows() != embedding.alpha_coords.cols() ||
        embedding.ambient_form.cols() != embedding.beta_coords.cols())
      fail(errc::dimension_mismatch, "embedding dimensions are inconsistent");
    // the embedding must reproduce the pairing matrix
    for (int s = 0; s < n; ++s)
      for (int t = 0; t < n; ++t) {
        double value = dot(embedding.alpha_coords.row(s),
                           embedding.ambient_form * embedding.beta_coords.row(t));
        if (std::abs(value - datum.pairing(s, t)) > datum.tolerance)
          fail(errc::invalid_datum, "embedding does not reproduce the pairing matrix");
      }
    datum.embedding = std::move(embedding);
  }
  return datum;
}

inline CoxeterDatum load_datum_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(errc::precondition_fail, "cannot open '" + path + "'");
  json j = json::parse(in);  // throws nlohmann::json::parse_error on bad input
  return datum_from_json(j);
}

inline json datum_to_json(const CoxeterDatum& datum) {
  json j;
  j["generators"] = datum.labels;
  j["pairing"] = mat_to_json(datum.pairing);
  if (datum.embedding) {
    j["embedding"] = {{"alpha", mat_to_json(datum.embedding->alpha_coords)},
                      {"beta", mat_to_json(datum.embedding->beta_coords)},
                      {"form", mat_to_json(datum.embedding->ambient_form)}};
  }
  j["tolerance"] = datum.tolerance;
  return j;
}

// ---------------------------------------------------------------------------
// Reports and records

inline const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::Fail: return "fail";
    default: return "assumed";
  }
}

inline json condition_to_json(const ConditionReport& c) {
  json j;
  j["verdict"] = verdict_name(c.verdict);
  json violations = json::array();
  for (const Violation& v : c.violations)
    violations.push_back({{"s", v.s}, {"t", v.t}, {"value", v.value}});
  j["violations"] = std::move(violations);
  return j;
}

inline json validation_to_json(const ValidationReport& r) {
  json j;
  j["schema"] = kSchemaTag;
  j["conditions"] = {{"D1", condition_to_json(r.d1)},   {"D2i", condition_to_json(r.d2i)},
                     {"D2ii", condition_to_json(r.d2ii)}, {"D3", condition_to_json(r.d3)},
                     {"D4", condition_to_json(r.d4)},   {"D5", condition_to_json(r.d5)}};
  j["ok"] = r.ok();
  return j;
}

inline const char* sign_name(SignClass s) {
  switch (s) {
    case SignClass::Positive: return "positive";
    case SignClass::Negative: return "negative";
    default: return "mixed";
  }
}

inline json witness_to_json(const CoxeterDatum& datum, const Word& word) {
  json j = json::array();
  for (int s : word) j.push_back(datum.labels[s]);
  return j;
}

// One JSON-lines record per root pair.
inline json root_record_json(const CoxeterDatum& datum, const RootPair& pair, SignClass sign) {
  json j;
  j["x"] = pair.x;
  j["y"] = pair.y;
  j["depth"] = pair.depth;
  j["sign"] = sign_name(sign);
  j["witness"] = witness_to_json(datum, pair.witness);
  return j;
}

inline json rootset_summary_json(const SignedRootSet& set) {
  json j;
  j["schema"] = kSchemaTag;
  j["count"] = set.pairs.size();
  j["positive"] = set.positives.size();
  j["negative"] = set.negatives.size();
  j["mixed"] = set.mixed.size();
  j["classes"] = set.class_members.size();
  j["depth_reached"] = set.depth_reached;
  j["complete"] = set.complete;
  j["side"] = set.side;
  return j;
}

inline json element_json(const CoxeterDatum& datum, const Element& e,
                         const std::vector<RootClass>& nset) {
  json j;
  j["word"] = witness_to_json(datum, e.word);
  j["length"] = length(datum, e);
  json classes = json::array();
  for (const RootClass& c : nset) classes.push_back(c.rep);
  j["n_set"] = std::move(classes);
  return j;
}

inline json decomposition_to_json(const CoxeterDatum& datum, const DecompositionResult& r) {
  json j;
  j["schema"] = kSchemaTag;
  j["holds"] = r.holds;
  j["depth_reached"] = r.depth_reached;
  j["complete"] = r.complete;
  if (r.counterexample) {
    json c = root_record_json(datum, *r.counterexample, SignClass::Mixed);
    c["side"] = r.side;
    j["counterexample"] = std::move(c);
  }
  return j;
}

inline json bond_to_json(const BondLabel& b) {
  switch (b.kind) {
    case BondKind::Finite: return json(b.m);
    case BondKind::Infinite: return json("infinite");
    default: return json("invalid");
  }
}

inline json order_to_json(const OrderLabel& o) {
  switch (o.kind) {
    case OrderKind::Finite: return json(o.m);
    case OrderKind::Infinite: return json("infinite");
    default: return json("inconclusive");
  }
}

inline json subgroup_report_json(const ReflectionSubgroup& sub) {
  json j;
  j["schema"] = kSchemaTag;
  json gens = json::array();
  for (const Reflection& g : sub.generators) gens.push_back(g.root_pair.x);
  j["generators"] = std::move(gens);
  if (sub.elements_complete)
    j["order"] = sub.elements.size();
  else
    j["order"] = "infinite/truncated";
  j["phi_class_count"] = sub.phi_class_ids.size();
  j["complete"] = sub.complete;

  json delta = json::array();
  for (const RootPair& d : sub.delta) delta.push_back(d.x);
  j["delta"] = std::move(delta);

  if (!sub.delta.empty()) {
    try {
      CoxeterDatum induced = induced_datum(sub.parent, sub.delta);
      j["coxeter_matrix_of_delta"] = coxeter_matrix_of(induced);
    } catch (const Error&) {
      j["coxeter_matrix_of_delta"] = nullptr;
    }
  }

  CanonicalReport report = d34_report(sub);
  json pairs = json::array();
  for (const CanonicalPairRecord& rec : report.pairs)
    pairs.push_back({{"i", rec.i},
                     {"j", rec.j},
                     {"value_xy", rec.value_xy},
                     {"value_yx", rec.value_yx},
                     {"product", rec.product},
                     {"bond", bond_to_json(rec.bond)},
                     {"order", order_to_json(rec.order)},
                     {"consistent", rec.consistent}});
  j["d34"] = std::move(pairs);
  j["d34_skipped"] = report.skipped;
  j["d34_consistent"] = report.consistent();
  return j;
}

}  // namespace pairedroots
