#include "wscn/scenario_io.hpp"

#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

namespace wscn {

namespace {

using nlohmann::json;

ParseError make_error(const std::string& message, const std::string& text, std::size_t byte) {
  int line = 1;
  int column = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return ParseError(message, line, column);
}

Money money_field(const json& value, const std::string& where) {
  if (value.is_number()) {
    throw ParseError("money value at " + where +
                         " is a JSON number; use a decimal string like \"4.50\"",
                     0, 0);
  }
  if (!value.is_string()) {
    throw ParseError("money value at " + where + " must be a string", 0, 0);
  }
  try {
    return parse_money(value.get<std::string>());
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string(e.what()) + " at " + where, 0, 0);
  }
}

std::vector<Money> money_array(const json& value, const std::string& where) {
  if (!value.is_array()) {
    throw ParseError(where + " must be an array of money strings", 0, 0);
  }
  std::vector<Money> values;
  values.reserve(value.size());
  for (std::size_t i = 0; i < value.size(); ++i) {
    values.push_back(money_field(value[i], where + "[" + std::to_string(i) + "]"));
  }
  return values;
}

}  // namespace

ParseError::ParseError(const std::string& message, int line_number, int column_number)
    : std::runtime_error(line_number > 0
                             ? message + " (line " + std::to_string(line_number) + ", column " +
                                   std::to_string(column_number) + ")"
                             : message),
      line(line_number),
      column(column_number) {}

ScenarioFile parse_scenario_text(const std::string& text, const std::string& default_name) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw make_error(e.what(), text, e.byte > 0 ? e.byte - 1 : 0);
  }
  if (!doc.is_object()) throw ParseError("scenario document must be a JSON object", 0, 0);

  for (const char* field : {"n", "k_max", "costs", "users"}) {
    if (!doc.contains(field)) {
      throw ParseError(std::string("missing required field \"") + field + "\"", 0, 0);
    }
  }
  if (!doc["n"].is_number_integer() || !doc["k_max"].is_number_integer()) {
    throw ParseError("\"n\" and \"k_max\" must be integers", 0, 0);
  }

  ScenarioFile file;
  Scenario& scenario = file.scenario;
  scenario.name = doc.value("name", default_name);
  scenario.n = doc["n"].get<int>();
  scenario.k_max = doc["k_max"].get<int>();
  scenario.seed = doc.value("seed", 0ULL);
  scenario.bid_increment =
      doc.contains("epsilon") ? money_field(doc["epsilon"], "epsilon") : Money(1);
  scenario.costs = money_array(doc["costs"], "costs");

  if (!doc["users"].is_array()) throw ParseError("\"users\" must be an array", 0, 0);
  if (static_cast<int>(doc["users"].size()) != scenario.n) {
    throw ParseError("\"users\" holds " + std::to_string(doc["users"].size()) +
                         " entries but n is " + std::to_string(scenario.n),
                     0, 0);
  }

  int index = 0;
  for (const json& user : doc["users"]) {
    const std::string where = "users[" + std::to_string(index) + "]";
    if (!user.is_object() || !user.contains("pb")) {
      throw ParseError(where + " must be an object with a \"pb\" array", 0, 0);
    }
    scenario.true_valuations.push_back(money_array(user["pb"], where + ".pb"));
    if (user.contains("jb")) {
      scenario.joint_estimates.push_back(money_array(user["jb"], where + ".jb"));
    } else {
      scenario.joint_estimates.push_back(scenario.true_valuations.back());
    }

    Strategy strategy;
    if (user.contains("strategy")) {
      if (!user["strategy"].is_string()) {
        throw ParseError(where + ".strategy must be a string", 0, 0);
      }
      try {
        strategy.kind = parse_strategy_kind(user["strategy"].get<std::string>());
      } catch (const std::invalid_argument& e) {
        throw ParseError(std::string(e.what()) + " at " + where, 0, 0);
      }
    }
    if (user.contains("stage1")) {
      strategy.fixed_stage1 = money_array(user["stage1"], where + ".stage1");
    }
    if (user.contains("stage2")) {
      strategy.fixed_stage2 = money_array(user["stage2"], where + ".stage2");
    }
    if (strategy.kind == StrategyKind::Fixed && !user.contains("stage1")) {
      throw ParseError(where + " uses the fixed strategy but carries no \"stage1\" bids", 0, 0);
    }
    file.strategies.push_back(std::move(strategy));
    ++index;
  }

  scenario = validate_scenario(scenario);
  return file;
}

ScenarioFile load_scenario_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open scenario file '" + path + "'", 0, 0);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_scenario_text(buffer.str(), std::filesystem::path(path).stem().string());
}

}  // namespace wscn
