#pragma once

#include <filesystem>
#include <map>
#include <string>

#include "vsum/embedding.hpp"

namespace vsum {

// Key -> embedding lookup with a single declared dimension.
class FeatureTable {
 public:
  explicit FeatureTable(std::size_t dim);

  std::size_t dim() const noexcept { return dim_; }
  std::size_t size() const noexcept { return entries_.size(); }
  bool contains(const std::string& key) const { return entries_.count(key) != 0; }

  // Throws InvalidInput on dimension mismatch or duplicate key.
  void insert(std::string key, EmbeddingVector vec);
  // Throws MissingKey.
  const EmbeddingVector& at(const std::string& key) const;
  // Throws InvalidInput if dimensions differ or a key appears in both.
  void merge(const FeatureTable& other);

  const std::map<std::string, EmbeddingVector>& entries() const noexcept { return entries_; }

  friend bool operator==(const FeatureTable&, const FeatureTable&) = default;

 private:
  std::size_t dim_;
  std::map<std::string, EmbeddingVector> entries_;
};

// Line-delimited JSON: a {"dim": n} header followed by {"key": k, "vector": [...]}
// records. Throws ParseError with a line number for malformed input.
FeatureTable load_feature_table(const std::filesystem::path& path);
FeatureTable parse_feature_table(std::string_view payload);
void write_feature_table(const std::filesystem::path& path, const FeatureTable& table);

}  // namespace vsum
