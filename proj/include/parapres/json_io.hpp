// JSON wire forms.
//
//   vector    {"field":"real"|"complex","data":[s,...]}
//   operator  {"m":..,"n":..,"p":1|"inf","field":..,"data":[[row],...]}
//   preserver {"m":..,"n":..,"p":..,"field":..,"vec":"col-major","matrix":[[row],...]}
//
// Scalars: exact rationals encode as integers when integral (int64 range) and
// as "p/q" strings otherwise; float real as numbers; complex as [re, im].
// Parsers accept all three spellings in any mode (doubles convert to exact
// rationals by their exact binary value). Reports carry their seeds and
// budgets; wall-clock is the only volatile field and every serializer can
// drop it for canonical comparison.

#pragma once

#include <json.hpp>

#include "parapres/harness.hpp"

namespace parapres::io {

using nlohmann::json;

// --- tags -------------------------------------------------------------------

inline std::string field_tag(Field f) { return f == Field::Real ? "real" : "complex"; }
inline Field field_from_tag(const std::string& s) {
  if (s == "real") return Field::Real;
  if (s == "complex") return Field::Complex;
  throw std::invalid_argument("unknown field tag '" + s + "'");
}
inline json pnorm_to_json(Pnorm p) { return p == Pnorm::P1 ? json(1) : json("inf"); }
inline Pnorm pnorm_from_json(const json& j) {
  if (j.is_number_integer() && j.get<int>() == 1) return Pnorm::P1;
  if (j.is_string() && (j.get<std::string>() == "inf" || j.get<std::string>() == "Inf")) return Pnorm::PInf;
  throw std::invalid_argument("p must be 1 or \"inf\"");
}

// --- scalars ----------------------------------------------------------------

inline json rational_to_json(const Rational& r) {
  if (r.is_integer() && r.is_small()) return json(r.small_num());
  return json(r.str());
}

inline Rational rational_from_json(const json& j) {
  if (j.is_number_integer()) return Rational(j.get<long long>());
  if (j.is_number_unsigned()) return Rational(static_cast<long long>(j.get<unsigned long long>()));
  if (j.is_number_float()) return Rational::from_double(j.get<double>());
  if (j.is_string()) return Rational::parse(j.get<std::string>());
  throw std::invalid_argument("expected a rational scalar (number or \"p/q\")");
}

inline json cd_to_json(const CD& c, Field field) {
  if (field == Field::Real) return json(c.real());
  return json::array({c.real(), c.imag()});
}

inline CD cd_from_json(const json& j) {
  if (j.is_number()) return CD(j.get<double>(), 0.0);
  if (j.is_string()) return CD(Rational::parse(j.get<std::string>()).to_double(), 0.0);
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return CD(j[0].get<double>(), j[1].get<double>());
  throw std::invalid_argument("expected a scalar (number, \"p/q\", or [re, im])");
}

template <class S>
json scalar_to_json(const S& s, const ScalarConfig& cfg) {
  if constexpr (is_exact_v<S>) {
    (void)cfg;
    return rational_to_json(s);
  } else {
    return cd_to_json(s, cfg.field);
  }
}

template <class S>
S scalar_from_json(const json& j) {
  if constexpr (is_exact_v<S>)
    return rational_from_json(j);
  else
    return cd_from_json(j);
}

inline json mag_to_json(const Rational& r) { return rational_to_json(r); }
inline json mag_to_json(double d) { return json(d); }

// --- vectors ------------------------------------------------------------------

template <class S>
json to_json(const Vec<S>& v, const ScalarConfig& cfg) {
  json data = json::array();
  for (std::size_t k = 0; k < v.size(); ++k) data.push_back(scalar_to_json(v[k], cfg));
  return json{{"field", field_tag(cfg.field)}, {"data", std::move(data)}};
}

template <class S>
Vec<S> vec_from_json(const json& j) {
  if (!j.is_object() || !j.contains("data") || !j["data"].is_array())
    throw std::invalid_argument("vector file needs a \"data\" array");
  std::vector<S> entries;
  for (const auto& e : j["data"]) entries.push_back(scalar_from_json<S>(e));
  return Vec<S>(std::move(entries));
}

// --- operators ------------------------------------------------------------------

template <class S>
json to_json(const OperatorMatrix<S>& a, const ScalarConfig& cfg) {
  json rows = json::array();
  for (int i = 0; i < a.m(); ++i) {
    json row = json::array();
    for (int j = 0; j < a.n(); ++j) row.push_back(scalar_to_json(a.at(i, j), cfg));
    rows.push_back(std::move(row));
  }
  return json{{"m", a.m()}, {"n", a.n()}, {"p", pnorm_to_json(a.p())}, {"field", field_tag(cfg.field)},
              {"data", std::move(rows)}};
}

template <class S>
OperatorMatrix<S> op_from_json(const json& j) {
  for (const char* key : {"m", "n", "p", "data"})
    if (!j.contains(key)) throw std::invalid_argument(std::string("operator file needs \"") + key + "\"");
  const int m = j["m"].get<int>();
  const int n = j["n"].get<int>();
  const Pnorm p = pnorm_from_json(j["p"]);
  if (!j["data"].is_array() || static_cast<int>(j["data"].size()) != m)
    throw std::invalid_argument("operator \"data\" must hold m rows");
  OperatorMatrix<S> a(m, n, p);
  for (int i = 0; i < m; ++i) {
    const auto& row = j["data"][static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<int>(row.size()) != n)
      throw std::invalid_argument("operator rows must hold n entries");
    for (int c = 0; c < n; ++c) a.at(i, c) = scalar_from_json<S>(row[static_cast<std::size_t>(c)]);
  }
  return a;
}

// --- preserver maps ---------------------------------------------------------------

template <class S>
json to_json(const PreserverMap<S>& t, const ScalarConfig& cfg) {
  const int d = t.dim();
  json rows = json::array();
  for (int r = 0; r < d; ++r) {
    json row = json::array();
    for (int c = 0; c < d; ++c) row.push_back(scalar_to_json(t.at(r, c), cfg));
    rows.push_back(std::move(row));
  }
  return json{{"m", t.m()},       {"n", t.n()},           {"p", pnorm_to_json(t.p())},
              {"field", field_tag(cfg.field)}, {"vec", "col-major"}, {"matrix", std::move(rows)}};
}

template <class S>
PreserverMap<S> preserver_from_json(const json& j) {
  for (const char* key : {"m", "n", "p", "matrix"})
    if (!j.contains(key)) throw std::invalid_argument(std::string("preserver file needs \"") + key + "\"");
  if (j.contains("vec") && j["vec"].get<std::string>() != "col-major")
    throw std::invalid_argument("preserver \"vec\" convention must be \"col-major\"");
  const int m = j["m"].get<int>();
  const int n = j["n"].get<int>();
  const Pnorm p = pnorm_from_json(j["p"]);
  const int d = m * n;
  if (!j["matrix"].is_array() || static_cast<int>(j["matrix"].size()) != d)
    throw std::invalid_argument("preserver \"matrix\" must be (mn) x (mn)");
  PreserverMap<S> t(m, n, p);
  for (int r = 0; r < d; ++r) {
    const auto& row = j["matrix"][static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<int>(row.size()) != d)
      throw std::invalid_argument("preserver \"matrix\" must be (mn) x (mn)");
    for (int c = 0; c < d; ++c) t.at(r, c) = scalar_from_json<S>(row[static_cast<std::size_t>(c)]);
  }
  return t;
}

// --- verdicts and reports -----------------------------------------------------------

template <class S>
json to_json(const PhaseSet<S>& ps, const ScalarConfig& cfg) {
  switch (ps.kind) {
    case PhaseSet<S>::Kind::Empty: return json{{"kind", "empty"}};
    case PhaseSet<S>::Kind::All: return json{{"kind", "all"}};
    case PhaseSet<S>::Kind::Finite: {
      json phases = json::array();
      for (const auto& p : ps.phases) phases.push_back(scalar_to_json(p, cfg));
      return json{{"kind", "finite"}, {"phases", std::move(phases)}};
    }
  }
  return {};
}

template <class S>
json to_json(const ParallelWitness<S>& w, const ScalarConfig& cfg, Pnorm p = Pnorm::P1) {
  return json{{"index", w.index},
              {"index_kind", p == Pnorm::P1 ? "column" : "row"},
              {"phase", scalar_to_json(w.phase, cfg)},
              {"tea", w.tea}};
}

template <class S>
json to_json(const PairWitness<S>& w, const ScalarConfig& cfg) {
  return json{{"a", to_json(w.a, cfg)}, {"b", to_json(w.b, cfg)}, {"note", w.note}};
}

template <class S>
json to_json(const PreservationVerdict<S>& v, const ScalarConfig& cfg) {
  json j{{"passed", v.passed}, {"battery_pairs", v.battery_pairs}, {"trials", v.trials}, {"seed", v.seed}};
  j["witness"] = v.witness ? to_json(*v.witness, cfg) : json(nullptr);
  return j;
}

template <class S>
json to_json(const IsometryVerdict<S>& v, const ScalarConfig& cfg) {
  json j{{"certified", v.certified}, {"constant", mag_to_json(v.constant)}, {"samples", v.samples}, {"seed", v.seed}};
  if (v.witness)
    j["witness"] = json{{"operator", to_json(v.witness->a, cfg)},
                        {"expected", mag_to_json(v.witness->expected)},
                        {"actual", mag_to_json(v.witness->actual)},
                        {"note", v.witness->note}};
  else
    j["witness"] = nullptr;
  return j;
}

template <class S>
json to_json(const ClassificationRecord<S>& r, const ScalarConfig& cfg) {
  return json{{"is_zero", r.is_zero},
              {"rank", r.rank},
              {"invertible", r.invertible},
              {"preserves_parallel", to_json(r.parallel, cfg)},
              {"preserves_tea", to_json(r.tea, cfg)},
              {"scalar_isometry", to_json(r.isometry, cfg)},
              {"theorem_consistent", r.theorem_consistent},
              {"note", r.note},
              {"trials", r.trials},
              {"samples", r.samples},
              {"seed", r.seed}};
}

inline json to_json(const MinerConfig& mc) {
  return json{{"m", mc.m},
              {"n", mc.n},
              {"p", pnorm_to_json(mc.p)},
              {"family", family_name(mc.family)},
              {"epsilon", mc.epsilon},
              {"candidates", mc.candidates},
              {"trials", mc.trials},
              {"samples", mc.samples},
              {"seed", mc.seed}};
}

// include_volatile = false drops wall-clock for canonical comparisons
template <class S>
json to_json(const MinerReport<S>& rep, const ScalarConfig& cfg, bool include_volatile = true) {
  json records = json::array();
  for (const auto& r : rep.records) records.push_back(to_json(r, cfg));
  json j{{"config", to_json(rep.config)},
         {"records", std::move(records)},
         {"summary",
          json{{"consistent", rep.consistent},
               {"inconsistent", rep.inconsistent},
               {"witnesses_found", rep.witnesses_found}}}};
  if (include_volatile) j["wall_ms"] = rep.wall_ms;
  return j;
}

json to_json(const VerifyReport& rep, bool include_volatile = true);
json to_json(const RankOneExampleReport& rep);

// --- files --------------------------------------------------------------------

// Parse a JSON document from disk; errors carry byte positions.
json read_json_file(const std::string& path);

enum class FileKind { Vector, Operator, Preserver };
FileKind detect_kind(const json& j);
Field detect_field(const json& j);  // defaults to Real when untagged

}  // namespace parapres::io
