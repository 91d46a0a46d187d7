#include "parapres/json_io.hpp"

#include <fstream>

namespace parapres::io {

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument("'" + path + "': " + e.what());
  }
}

FileKind detect_kind(const json& j) {
  if (!j.is_object()) throw std::invalid_argument("input must be a JSON object");
  if (j.contains("matrix")) return FileKind::Preserver;
  if (j.contains("m") || j.contains("n")) return FileKind::Operator;
  if (j.contains("data")) return FileKind::Vector;
  throw std::invalid_argument("input is neither a vector, an operator, nor a preserver map");
}

Field detect_field(const json& j) {
  if (j.is_object() && j.contains("field")) return field_from_tag(j["field"].get<std::string>());
  return Field::Real;
}

json to_json(const VerifyReport& rep, bool include_volatile) {
  json items = json::array();
  for (const auto& it : rep.items)
    items.push_back(json{{"id", it.id},
                         {"name", it.name},
                         {"skipped", it.skipped},
                         {"passed", it.passed},
                         {"detail", it.detail},
                         {"repro", it.repro}});
  json j{{"config", json{{"m", rep.config.m},
                         {"n", rep.config.n},
                         {"field", field_tag(rep.config.field)},
                         {"mode", rep.config.mode == Mode::ExactRational ? "exact" : "float"},
                         {"seed", rep.config.seed},
                         {"budget_scale", rep.config.budget_scale}}},
         {"items", std::move(items)},
         {"all_passed", rep.all_passed}};
  if (include_volatile) j["wall_ms"] = rep.wall_ms;
  return j;
}

json to_json(const RankOneExampleReport& rep) {
  return json{{"rank", rep.rank},
              {"input_pair", json::array({json::array({0, 1}), json::array({1, 1})})},
              {"input_pair_tea", rep.input_pair_tea},
              {"image_first", json::array({rational_to_json(rep.image_first[0]), rational_to_json(rep.image_first[1])})},
              {"image_second",
               json::array({rational_to_json(rep.image_second[0]), rational_to_json(rep.image_second[1])})},
              {"image_sum_norm", rational_to_json(rep.image_sum_norm)},
              {"image_norm_sum", rational_to_json(rep.image_norm_sum)},
              {"images_tea", rep.images_tea},
              {"parallel_preserved_on_sample", rep.parallel_preserved_on_sample},
              {"trials", rep.trials},
              {"all_match", rep.all_match}};
}

}  // namespace parapres::io
