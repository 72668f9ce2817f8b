#include "vsum/feature_table.hpp"

#include <fstream>
#include <optional>
#include <sstream>

#include <json.hpp>

#include "vsum/error.hpp"

namespace vsum {

using nlohmann::json;

FeatureTable::FeatureTable(std::size_t dim) : dim_(dim) {
  if (dim < 2) throw InvalidInput("feature table dimension must be at least 2");
}

void FeatureTable::insert(std::string key, EmbeddingVector vec) {
  if (vec.dim() != dim_) {
    throw InvalidInput("feature '" + key + "' has dim " + std::to_string(vec.dim()) +
                       ", table declares " + std::to_string(dim_));
  }
  if (!entries_.emplace(key, std::move(vec)).second) {
    throw InvalidInput("duplicate feature key '" + key + "'");
  }
}

const EmbeddingVector& FeatureTable::at(const std::string& key) const {
  auto it = entries_.find(key);
  if (it == entries_.end()) throw MissingKey("feature key '" + key + "' not found");
  return it->second;
}

void FeatureTable::merge(const FeatureTable& other) {
  if (other.dim_ != dim_) throw InvalidInput("cannot merge feature tables of different dims");
  for (const auto& [k, v] : other.entries_) insert(k, v);
}

FeatureTable parse_feature_table(std::string_view payload) {
  std::istringstream in{std::string(payload)};
  std::string line;
  std::size_t lineno = 0;
  std::optional<FeatureTable> table;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    json rec;
    try {
      rec = json::parse(line);
    } catch (const json::exception& e) {
      throw ParseError(std::string("malformed feature record: ") + e.what(), lineno);
    }
    try {
      if (!table) {
        const auto dim = rec.at("dim").get<long long>();
        if (dim < 2) throw ParseError("feature file dim must be at least 2", lineno);
        table.emplace(static_cast<std::size_t>(dim));
        continue;
      }
      auto key = rec.at("key").get<std::string>();
      const auto& arr = rec.at("vector");
      if (!arr.is_array()) throw ParseError("'vector' must be an array", lineno);
      std::vector<double> values;
      values.reserve(arr.size());
      for (const auto& x : arr) {
        if (!x.is_number()) throw ParseError("non-numeric vector entry", lineno);
        values.push_back(x.get<double>());
      }
      table->insert(std::move(key), EmbeddingVector(std::move(values)));
    } catch (const ParseError&) {
      throw;
    } catch (const Error& e) {
      throw ParseError(e.what(), lineno);
    } catch (const json::exception& e) {
      throw ParseError(std::string("malformed feature record: ") + e.what(), lineno);
    }
  }
  if (!table) throw ParseError("feature file is missing its {\"dim\": n} header");
  return std::move(*table);
}

FeatureTable load_feature_table(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInput("cannot open feature file " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return parse_feature_table(ss.str());
  } catch (const ParseError& e) {
    throw ParseError::prefixed(path.string() + ": ", e);
  }
}

void write_feature_table(const std::filesystem::path& path, const FeatureTable& table) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw InvalidInput("cannot write feature file " + path.string());
  out << json{{"dim", table.dim()}}.dump() << '\n';
  for (const auto& [key, vec] : table.entries()) {
    json values = json::array();
    for (double v : vec.values()) values.push_back(v);
    out << json{{"key", key}, {"vector", std::move(values)}}.dump() << '\n';
  }
}

}  // namespace vsum
