#include "ergoifc/channel_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "ergoifc/error.hpp"

namespace ergoifc {

namespace {

using nlohmann::json;

double number_field(const json& obj, const char* key, const std::string& where) {
  const std::string path = where + "." + key;
  if (!obj.contains(key)) throw InvalidInput(path + ": missing");
  const auto& v = obj.at(key);
  if (!v.is_number()) throw InvalidInput(path + ": expected a number");
  return v.get<double>();
}

}  // namespace

ChannelSpec parse_channel_json(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InvalidInput(std::string("<document>: ") + e.what());
  }
  if (!doc.is_object()) throw InvalidInput("<document>: expected an object");
  if (!doc.contains("states") || !doc.at("states").is_array()) throw InvalidInput("states: expected an array");
  const auto& arr = doc.at("states");
  if (arr.empty()) throw InvalidInput("states: empty");

  std::vector<FadingState> states;
  std::vector<double> probs;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const std::string where = "states[" + std::to_string(i) + "]";
    const auto& o = arr.at(i);
    if (!o.is_object()) throw InvalidInput(where + ": expected an object");
    FadingState s{number_field(o, "g11", where), number_field(o, "g12", where), number_field(o, "g21", where),
                  number_field(o, "g22", where)};
    try {
      s.validate();
    } catch (const InvalidInput& e) {
      throw InvalidInput(where + ": " + e.what());
    }
    const double p = number_field(o, "p", where);
    if (!(p > 0.0) || !std::isfinite(p)) throw InvalidInput(where + ".p: must be positive");
    states.push_back(s);
    probs.push_back(p);
  }

  if (!doc.contains("budget") || !doc.at("budget").is_object()) throw InvalidInput("budget: expected an object");
  const auto& b = doc.at("budget");
  PowerBudget budget{number_field(b, "p1", "budget"), number_field(b, "p2", "budget")};
  try {
    budget.validate();
  } catch (const InvalidInput& e) {
    throw InvalidInput(std::string("budget: ") + e.what());
  }

  try {
    return ChannelSpec{FadingProcess(std::move(states), std::move(probs)), budget};
  } catch (const InvalidInput& e) {
    throw InvalidInput(std::string("states[*].p: ") + e.what());
  }
}

ChannelSpec load_channel_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput(path.string() + ": cannot open channel file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_channel_json(buf.str());
}

std::string to_channel_json(const FadingProcess& process, const PowerBudget& budget) {
  json doc;
  doc["states"] = json::array();
  for (std::size_t i = 0; i < process.size(); ++i) {
    const auto& s = process.state(i);
    doc["states"].push_back({{"g11", s.g11}, {"g12", s.g12}, {"g21", s.g21}, {"g22", s.g22}, {"p", process.prob(i)}});
  }
  doc["budget"] = {{"p1", budget.p1}, {"p2", budget.p2}};
  return doc.dump(2);
}

}  // namespace ergoifc
