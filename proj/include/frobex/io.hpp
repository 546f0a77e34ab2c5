#pragma once

#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "frobex/codes.hpp"
#include "frobex/dualmod.hpp"
#include "frobex/errors.hpp"
#include "frobex/extension.hpp"
#include "frobex/finring.hpp"
#include "frobex/mobius.hpp"
#include "frobex/rational.hpp"
#include "frobex/sgring.hpp"

namespace frobex {

/**
 * File formats and report builders.  All reports are nlohmann ordered
 * JSON with a leading "schema" field and fully deterministic field and
 * row order, so byte comparison of serialized reports is meaningful.
 */

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

inline Json parse_json_text(const std::string& text, const std::string& what) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(what + ": " + e.what());
  }
}

inline Json parse_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_json_text(ss.str(), path);
}

// --- ring specs ---

inline FiniteRing ring_from_json(const Json& j, long size_cap = FiniteRing::kDefaultSizeCap) {
  try {
    if (!j.is_object()) throw InputError("ring spec must be a JSON object");
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "zn") {
      return FiniteRing::zn(j.at("n").get<long>(), size_cap);
    }
    if (kind == "matrix") {
      return FiniteRing::matrix_ring(j.at("k").get<int>(), j.at("q").get<long>(), size_cap);
    }
    if (kind == "upper_triangular") {
      return FiniteRing::upper_triangular(j.at("k").get<int>(), j.at("q").get<long>(), size_cap);
    }
    if (kind == "product") {
      const auto& factors = j.at("factors");
      if (!factors.is_array() || factors.empty())
        throw InputError("product ring spec needs a nonempty factor array");
      FiniteRing acc = ring_from_json(factors.at(0), size_cap);
      for (size_t i = 1; i < factors.size(); ++i)
        acc = FiniteRing::product(acc, ring_from_json(factors.at(i), size_cap), size_cap);
      return acc;
    }
    if (kind == "tables") {
      std::vector<std::vector<int>> add = j.at("add").get<std::vector<std::vector<int>>>();
      std::vector<std::vector<int>> mul = j.at("mul").get<std::vector<std::vector<int>>>();
      std::vector<std::string> labels;
      if (j.contains("labels")) labels = j.at("labels").get<std::vector<std::string>>();
      return FiniteRing::from_tables(add, mul, labels, size_cap);
    }
    throw InputError("unknown ring kind: " + kind);
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("ring spec: ") + e.what());
  }
}

inline FiniteRing ring_from_file(const std::string& path,
                                 long size_cap = FiniteRing::kDefaultSizeCap) {
  return ring_from_json(parse_json_file(path), size_cap);
}

/// Serialization as explicit tables; parsing it back reproduces the ring
/// bit for bit.
inline Json ring_to_json(const FiniteRing& R) {
  Json j;
  j["kind"] = "tables";
  std::vector<std::string> labels;
  for (int r = 0; r < R.size(); ++r) labels.push_back(R.label(r));
  j["labels"] = labels;
  Json add = Json::array();
  Json mul = Json::array();
  for (int a = 0; a < R.size(); ++a) {
    Json ra = Json::array();
    Json rm = Json::array();
    for (int b = 0; b < R.size(); ++b) {
      ra.push_back(R.add(a, b));
      rm.push_back(R.mul(a, b));
    }
    add.push_back(std::move(ra));
    mul.push_back(std::move(rm));
  }
  j["add"] = std::move(add);
  j["mul"] = std::move(mul);
  return j;
}

// --- cyclotomic values ---

inline Json cyclo_to_json(const Cyclo& x) {
  Json j;
  j["order"] = x.order();
  Json coeffs = Json::array();
  for (const auto& c : x.coeffs()) coeffs.push_back(rational_to_string(c));
  j["coeffs"] = std::move(coeffs);
  j["display"] = x.to_string();
  return j;
}

inline Cyclo cyclo_from_json(const Json& j) {
  try {
    const long order = j.at("order").get<long>();
    const auto coeffs = j.at("coeffs").get<std::vector<std::string>>();
    Cyclo acc;
    for (size_t i = 0; i < coeffs.size(); ++i) {
      acc += Cyclo(rational_from_string(coeffs[i])) *
             Cyclo::root_of_unity(order, static_cast<long>(i));
    }
    return acc;
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("cyclotomic value: ") + e.what());
  }
}

// --- weight tables ---

/// Weight table file: object mapping every alphabet label to a rational
/// string.  Missing or unknown labels are input errors.
inline WeightFn weight_from_json(const FrobeniusBimodule& A, const Json& j,
                                 bool require_w0_zero = false) {
  if (!j.is_object()) throw InputError("weight table must be a JSON object");
  WeightFn w(A);
  for (int a = 0; a < A.size(); ++a) {
    const std::string lab = A.label(a);
    if (!j.contains(lab)) throw InputError("weight table is missing label " + lab);
    if (!j.at(lab).is_string())
      throw InputError("weight value for " + lab + " must be a rational string");
    w[a] = Cyclo(rational_from_string(j.at(lab).get<std::string>()));
  }
  if (j.size() != static_cast<size_t>(A.size())) {
    std::set<std::string> known;
    for (int a = 0; a < A.size(); ++a) known.insert(A.label(a));
    for (auto it = j.begin(); it != j.end(); ++it)
      if (!known.count(it.key()))
        throw InputError("weight table has unknown label " + it.key());
  }
  if (require_w0_zero && !w[A.zero()].is_zero())
    throw InputError("weight table must have w(0) = 0");
  return w;
}

inline WeightFn weight_from_file(const FrobeniusBimodule& A, const std::string& path,
                                 bool require_w0_zero = false) {
  return weight_from_json(A, parse_json_file(path), require_w0_zero);
}

/// Inverse of weight_from_json; defined for rational-valued weights only.
inline Json weight_to_json(const WeightFn& w) {
  const FrobeniusBimodule& A = w.bimodule();
  Json j;
  for (int a = 0; a < A.size(); ++a) {
    if (!w[a].is_rational())
      throw InputError("weight table files hold rational values; " + A.label(a) +
                       " maps to " + w[a].to_string());
    j[A.label(a)] = rational_to_string(w[a].as_rational());
  }
  return j;
}

// value tables for reports: label -> cyclotomic value object
inline Json weight_values_json(const WeightFn& w) {
  Json j;
  for (int a = 0; a < w.bimodule().size(); ++a) j[w.bimodule().label(a)] = cyclo_to_json(w[a]);
  return j;
}

inline Json sgfn_values_json(const SgFn& f) {
  Json j;
  for (int r = 0; r < f.ring().size(); ++r) j[f.ring().label(r)] = cyclo_to_json(f[r]);
  return j;
}

inline Json label_list(const FrobeniusBimodule& A, const std::vector<int>& elems) {
  Json j = Json::array();
  for (int a : elems) j.push_back(A.label(a));
  return j;
}

inline Json ring_label_list(const FiniteRing& R, const std::vector<int>& elems) {
  Json j = Json::array();
  for (int r : elems) j.push_back(R.label(r));
  return j;
}

inline Json word_label_list(const FrobeniusBimodule& A, int n, const std::vector<long>& codes) {
  Json j = Json::array();
  for (long c : codes) {
    Json wj = Json::array();
    for (int comp : word_of_code(A, n, c)) wj.push_back(A.label(comp));
    j.push_back(std::move(wj));
  }
  return j;
}

// --- report builders ---

inline Json report_ring_info(const FiniteRing& R) {
  Json j;
  j["schema"] = kSchemaVersion;
  j["command"] = "ring-info";
  j["size"] = R.size();
  j["zero"] = R.label(R.zero());
  j["one"] = R.label(R.one());
  j["invariant_factors"] = R.decomposition().invariant_factors;
  j["units"] = ring_label_list(R, R.units());
  bool comm = true;
  for (int a = 0; a < R.size() && comm; ++a)
    for (int b = 0; b < R.size(); ++b)
      if (R.mul(a, b) != R.mul(b, a)) {
        comm = false;
        break;
      }
  j["commutative"] = comm;
  if (R.size() <= 64) j["tables"] = ring_to_json(R);
  return j;
}

inline Json report_dual(const FiniteRing& R, const FrobeniusBimodule& A) {
  Json j;
  j["schema"] = kSchemaVersion;
  j["command"] = "dual";
  j["ring_size"] = R.size();
  j["size"] = A.size();
  j["exponent"] = A.exponent();
  j["invariant_factors"] = R.decomposition().invariant_factors;
  std::vector<std::string> labels;
  for (int a = 0; a < A.size(); ++a) labels.push_back(A.label(a));
  j["labels"] = labels;
  j["chi_provenance"] = "evaluation-at-one";
  Json chi = Json::array();
  for (int a = 0; a < A.size(); ++a) chi.push_back(A.chi(a).to_string());
  j["chi"] = std::move(chi);
  const auto gen = generating_character_search(R);
  j["ring_is_frobenius"] = gen.has_value();
  if (gen) {
    j["ring_generating_character"] = gen->exponents;
  } else {
    j["ring_generating_character"] = nullptr;
  }
  if (A.size() <= 64) {
    Json lact = Json::array();
    Json ract = Json::array();
    for (int r = 0; r < R.size(); ++r) {
      Json row_l = Json::array();
      Json row_r = Json::array();
      for (int a = 0; a < A.size(); ++a) {
        row_l.push_back(A.left_act(r, a));
        row_r.push_back(A.right_act(a, r));
      }
      lact.push_back(std::move(row_l));
      ract.push_back(std::move(row_r));
    }
    j["left_action"] = std::move(lact);
    j["right_action"] = std::move(ract);
  }
  return j;
}

inline Json report_whom(const FrobeniusBimodule& A) {
  Json j;
  j["schema"] = kSchemaVersion;
  j["command"] = "whom";
  const SgFn eps = epsilon(A.ring());
  const WeightFn whom = homogeneous_weight(A);
  j["epsilon"] = sgfn_values_json(eps);
  j["whom"] = weight_values_json(whom);
  j["fourier_identity_ok"] = fourier(A, eps) == whom;
  return j;
}

inline Json report_mobius(const FrobeniusBimodule& A) {
  Json j;
  j["schema"] = kSchemaVersion;
  j["command"] = "mobius";
  const CyclicPoset P = build_cyclic_poset(A);
  const MobiusTable by_chi = mobius_by_character(P);
  Json nodes = Json::array();
  for (size_t i = 0; i < P.nodes.size(); ++i) {
    Json nj;
    nj["representative"] = A.label(P.nodes[i].rep);
    nj["size"] = static_cast<long>(P.nodes[i].elements.size());
    nj["mu"] = by_chi.mu[i];
    nodes.push_back(std::move(nj));
  }
  j["nodes"] = std::move(nodes);
  j["methods_agree"] = true;  // mobius_by_character cross-checks internally
  return j;
}

inline Json condition_report_json(const FrobeniusBimodule& A, const ConditionReport& rep) {
  Json j;
  j["verdict"] = rep.verdict;
  Json rows = Json::array();
  for (const auto& row : rep.rows) {
    Json rj;
    rj["generators"] = label_list(A, row.S.generators);
    rj["size"] = static_cast<long>(row.S.elements.size());
    rj["direct"] = cyclo_to_json(row.direct_value);
    rj["mobius"] = cyclo_to_json(row.mobius_value);
    rj["nonzero"] = row.nonzero;
    rows.push_back(std::move(rj));
  }
  j["rows"] = std::move(rows);
  return j;
}

inline Json report_condition(const FrobeniusBimodule& A, const ConditionReport& rep) {
  Json j;
  j["schema"] = kSchemaVersion;
  j["command"] = "condition";
  j["condition"] = condition_report_json(A, rep);
  return j;
}

inline Json certificate_json(const ExtensionCertificate& cert) {
  const FrobeniusBimodule& A = *cert.A;
  Json j;
  j["condition"] = condition_report_json(A, cert.condition);
  j["condition_ok"] = cert.condition_ok;
  if (cert.gamma) {
    j["gamma"] = sgfn_values_json(*cert.gamma);
  } else {
    j["gamma"] = nullptr;
  }
  j["convolution_identity_ok"] = cert.conv_identity_ok;
  j["whom_identity_ok"] = cert.whom_identity_ok;
  j["gamma_bi_invariant"] = cert.gamma_bi_invariant;
  j["gamma_in_r0"] = cert.gamma_in_r0;
  j["gamma_unique_in_r0_biinvariant"] = cert.gamma_unique_in_r0_biinvariant;
  j["biinv_system_unknowns"] = cert.biinv_system_unknowns;
  j["biinv_system_rank"] = cert.biinv_system_rank;
  j["chi_provenance"] = cert.chi_provenance;
  j["valid"] = cert.valid;
  return j;
}

inline Json report_gamma(const FrobeniusBimodule& A, const WeightFn& w, const SgFn& gamma) {
  Json j;
  j["schema"] = kSchemaVersion;
  j["command"] = "gamma";
  j["wtilde"] = sgfn_values_json(inverse_fourier(w));
  j["gamma"] = sgfn_values_json(gamma);
  j["convolution_identity_ok"] =
      convolve(inverse_fourier(w), gamma) == epsilon(A.ring());
  j["whom_identity_ok"] = correlate(w, gamma) == homogeneous_weight(A);
  return j;
}

inline Json report_certificate(const ExtensionCertificate& cert) {
  Json j;
  j["schema"] = kSchemaVersion;
  j["command"] = "certify";
  j["certificate"] = certificate_json(cert);
  return j;
}

inline Json code_results_json(const FrobeniusBimodule& A, int n,
                              const std::vector<CodeExtensionResult>& codes) {
  Json rows = Json::array();
  for (const auto& res : codes) {
    Json rj;
    rj["generators"] = word_label_list(A, n, res.generators);
    rj["size"] = res.code_size;
    rj["isometries"] = res.isometry_count;
    rj["extended"] = res.extended_count;
    Json fails = Json::array();
    for (const auto& witness : res.failing_gen_images)
      fails.push_back(word_label_list(A, n, witness));
    rj["failures"] = std::move(fails);
    rows.push_back(std::move(rj));
  }
  return rows;
}

inline Json report_brute_force(const FrobeniusBimodule& A, const ExtensionSearchReport& rep) {
  Json j;
  j["schema"] = kSchemaVersion;
  j["command"] = "brute-force";
  j["n"] = rep.n;
  j["certificate_valid"] = rep.certificate_valid;
  j["certificate_note"] = rep.certificate_note;
  j["verdict"] = rep.verdict;
  j["codes"] = code_results_json(A, rep.n, rep.codes);
  return j;
}

inline Json report_other_alphabet(const FrobeniusBimodule& A, const OtherAlphabetReport& rep) {
  Json j;
  j["schema"] = kSchemaVersion;
  j["command"] = "other-alphabet";
  j["alphabet"] = label_list(A, rep.alphabet);
  j["pseudo_injective"] = rep.pseudo_injective;
  j["socle_cyclic"] = rep.socle_cyclic;
  j["certificate_valid"] = rep.certificate_valid;
  j["symmetry_group_size"] = rep.symmetry_group_size;
  j["n"] = rep.n;
  j["verdict"] = rep.verdict;
  j["codes"] = code_results_json(A, rep.n, rep.codes);
  return j;
}

inline void write_report(const Json& j, const std::string& out_path) {
  const std::string text = j.dump(2) + "\n";
  if (out_path.empty() || out_path == "-") {
    std::fputs(text.c_str(), stdout);
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw InputError("cannot open output file: " + out_path);
  out << text;
  if (!out) throw InputError("failed writing output file: " + out_path);
}

}  // namespace frobex
