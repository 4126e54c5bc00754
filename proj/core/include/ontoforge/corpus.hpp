#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

namespace ontoforge {

struct Document {
  std::size_t id = 0;
  std::filesystem::path source_path;
  std::vector<std::string> tokens;
};

// Bijection between terms and dense indices, in first-occurrence order.
class Vocabulary {
 public:
  // Returns the index of `term`, inserting it if new.
  std::size_t intern(std::string_view term);

  std::optional<std::size_t> find(std::string_view term) const;
  const std::string& term(std::size_t index) const { return terms_.at(index); }
  std::size_t size() const noexcept { return terms_.size(); }
  const std::vector<std::string>& terms() const noexcept { return terms_; }

 private:
  std::vector<std::string> terms_;
  std::unordered_map<std::string, std::size_t> index_;
};

struct TermCount {
  std::uint32_t term = 0;
  std::uint32_t count = 0;

  friend bool operator==(const TermCount&, const TermCount&) = default;
};

// Sparse term x document count matrix stored column-wise; each column lists
// its non-zero entries in ascending term order.
class TermDocMatrix {
 public:
  TermDocMatrix() = default;
  TermDocMatrix(std::size_t terms, std::vector<std::vector<TermCount>> columns);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return columns_.size(); }

  std::span<const TermCount> column(std::size_t doc) const { return columns_.at(doc); }
  std::uint64_t column_sum(std::size_t doc) const;
  std::uint32_t at(std::size_t term, std::size_t doc) const;
  std::uint64_t total() const;

  friend bool operator==(const TermDocMatrix&, const TermDocMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::vector<std::vector<TermCount>> columns_;
};

using StopWords = std::unordered_set<std::string>;

struct Corpus {
  std::vector<Document> documents;
  Vocabulary vocabulary;
  TermDocMatrix counts;
  // FNV-1a over file names and contents, hex encoded.
  std::string digest;
};

// Lowercases, splits on every non-letter code point and drops tokens shorter
// than two code points. Invalid UTF-8 bytes act as separators.
std::vector<std::string> tokenize(std::string_view text);

bool is_valid_utf8(std::string_view bytes);

// One word per line, lines starting with '#' ignored, surrounding whitespace
// trimmed, words lowercased.
StopWords load_stopwords(const std::filesystem::path& path);
StopWords parse_stopwords(std::string_view text);

std::vector<std::string> prune(std::vector<std::string> tokens, const StopWords& stopwords);

// Builds documents, vocabulary and counts from in-memory (name, text) pairs.
// Documents are ordered by name.
Corpus build_corpus(std::vector<std::pair<std::string, std::string>> named_texts,
                    const StopWords& stopwords);

// Reads every *.txt file in `dir` (non-recursive).
Corpus load_corpus(const std::filesystem::path& dir, const std::filesystem::path& stopwords);
Corpus load_corpus(const std::filesystem::path& dir, const StopWords& stopwords);

}  // namespace ontoforge
