#include "ontoforge/corpus.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "ontoforge/error.hpp"

namespace ontoforge {

namespace {

constexpr char32_t kInvalid = 0xFFFFFFFF;

// Decodes one code point starting at `pos`, advancing it. Malformed
// sequences yield kInvalid and consume a single byte.
char32_t decode_utf8(std::string_view s, std::size_t& pos) {
  const auto lead = static_cast<unsigned char>(s[pos]);
  if (lead < 0x80) {
    ++pos;
    return lead;
  }
  std::size_t extra = 0;
  char32_t cp = 0;
  char32_t min = 0;
  if ((lead & 0xE0) == 0xC0) {
    extra = 1;
    cp = lead & 0x1F;
    min = 0x80;
  } else if ((lead & 0xF0) == 0xE0) {
    extra = 2;
    cp = lead & 0x0F;
    min = 0x800;
  } else if ((lead & 0xF8) == 0xF0) {
    extra = 3;
    cp = lead & 0x07;
    min = 0x10000;
  } else {
    ++pos;
    return kInvalid;
  }
  if (pos + extra >= s.size()) {
    ++pos;
    return kInvalid;
  }
  for (std::size_t i = 1; i <= extra; ++i) {
    const auto b = static_cast<unsigned char>(s[pos + i]);
    if ((b & 0xC0) != 0x80) {
      ++pos;
      return kInvalid;
    }
    cp = (cp << 6) | (b & 0x3F);
  }
  if (cp < min || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) {
    ++pos;
    return kInvalid;
  }
  pos += extra + 1;
  return cp;
}

void encode_utf8(char32_t cp, std::string& out) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

// Letters: ASCII alphabetic plus non-ASCII code points outside the common
// punctuation, symbol, digit and whitespace blocks.
bool is_letter(char32_t cp) {
  if (cp < 0x80) return (cp >= 'a' && cp <= 'z') || (cp >= 'A' && cp <= 'Z');
  if (cp <= 0xBF) return cp == 0xAA || cp == 0xB5 || cp == 0xBA;
  if (cp == 0xD7 || cp == 0xF7) return false;
  if (cp >= 0x2000 && cp <= 0x2BFF) return false;  // punctuation, symbols, arrows
  if (cp >= 0x3000 && cp <= 0x303F) return false;  // CJK punctuation
  if (cp >= 0xFE30 && cp <= 0xFE4F) return false;
  if (cp >= 0xFF00 && cp <= 0xFF20) return false;  // fullwidth punctuation and digits
  if (cp >= 0xFF3B && cp <= 0xFF40) return false;
  if (cp >= 0xFF5B && cp <= 0xFF65) return false;
  if (cp >= 0x1F000 && cp <= 0x1FAFF) return false;  // emoji and pictographs
  if (cp == 0xFEFF) return false;
  return true;
}

// Simple one-to-one case folding for Latin-1, Latin Extended-A, Greek and
// Cyrillic capitals. Everything else maps to itself.
char32_t fold_case(char32_t cp) {
  if (cp >= 'A' && cp <= 'Z') return cp + 0x20;
  if (cp < 0x80) return cp;
  if (cp >= 0xC0 && cp <= 0xDE && cp != 0xD7) return cp + 0x20;
  if (cp >= 0x100 && cp <= 0x137) return cp | 1U;
  if (cp >= 0x139 && cp <= 0x148) return (cp % 2 == 1) ? cp + 1 : cp;
  if (cp >= 0x14A && cp <= 0x177) return cp | 1U;
  if (cp == 0x178) return 0xFF;
  if (cp >= 0x179 && cp <= 0x17E) return (cp % 2 == 1) ? cp + 1 : cp;
  if (cp >= 0x391 && cp <= 0x3AB && cp != 0x3A2) return cp + 0x20;
  if (cp >= 0x410 && cp <= 0x42F) return cp + 0x20;
  if (cp >= 0x400 && cp <= 0x40F) return cp + 0x50;
  return cp;
}

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n\f\v");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n\f\v");
  return s.substr(first, last - first + 1);
}

std::string read_file(const std::filesystem::path& path, ErrorKind kind) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(kind, "cannot read " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) fail(kind, "cannot read " + path.string());
  return std::move(buffer).str();
}

class Fnv1a {
 public:
  void update(std::string_view bytes) {
    for (unsigned char c : bytes) {
      state_ ^= c;
      state_ *= 0x100000001b3ULL;
    }
  }
  std::string hex() const {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(state_));
    return buf;
  }

 private:
  std::uint64_t state_ = 0xcbf29ce484222325ULL;
};

}  // namespace

std::size_t Vocabulary::intern(std::string_view term) {
  auto it = index_.find(std::string(term));
  if (it != index_.end()) return it->second;
  const std::size_t idx = terms_.size();
  terms_.emplace_back(term);
  index_.emplace(terms_.back(), idx);
  return idx;
}

std::optional<std::size_t> Vocabulary::find(std::string_view term) const {
  auto it = index_.find(std::string(term));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

TermDocMatrix::TermDocMatrix(std::size_t terms, std::vector<std::vector<TermCount>> columns)
    : rows_(terms), columns_(std::move(columns)) {
  for (auto& col : columns_) {
    std::sort(col.begin(), col.end(),
              [](const TermCount& a, const TermCount& b) { return a.term < b.term; });
    for (const auto& e : col)
      if (e.term >= rows_) fail(ErrorKind::ShapeError, "term index outside matrix rows");
  }
}

std::uint64_t TermDocMatrix::column_sum(std::size_t doc) const {
  std::uint64_t sum = 0;
  for (const auto& e : column(doc)) sum += e.count;
  return sum;
}

std::uint32_t TermDocMatrix::at(std::size_t term, std::size_t doc) const {
  auto col = column(doc);
  auto it = std::lower_bound(col.begin(), col.end(), term,
                             [](const TermCount& e, std::size_t t) { return e.term < t; });
  return (it != col.end() && it->term == term) ? it->count : 0;
}

std::uint64_t TermDocMatrix::total() const {
  std::uint64_t sum = 0;
  for (std::size_t k = 0; k < cols(); ++k) sum += column_sum(k);
  return sum;
}

bool is_valid_utf8(std::string_view bytes) {
  std::size_t pos = 0;
  while (pos < bytes.size())
    if (decode_utf8(bytes, pos) == kInvalid) return false;
  return true;
}

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> tokens;
  std::string current;
  std::size_t length = 0;
  auto flush = [&] {
    if (length >= 2) tokens.push_back(current);
    current.clear();
    length = 0;
  };
  std::size_t pos = 0;
  while (pos < text.size()) {
    const char32_t cp = decode_utf8(text, pos);
    if (cp != kInvalid && is_letter(cp)) {
      encode_utf8(fold_case(cp), current);
      ++length;
    } else {
      flush();
    }
  }
  flush();
  return tokens;
}

StopWords parse_stopwords(std::string_view text) {
  StopWords words;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    auto line = trim(text.substr(start, end - start));
    if (!line.empty() && line.front() != '#') {
      std::string word;
      std::size_t pos = 0;
      while (pos < line.size()) {
        const char32_t cp = decode_utf8(line, pos);
        if (cp != kInvalid) encode_utf8(fold_case(cp), word);
      }
      words.insert(std::move(word));
    }
    start = end + 1;
  }
  return words;
}

StopWords load_stopwords(const std::filesystem::path& path) {
  return parse_stopwords(read_file(path, ErrorKind::IoError));
}

std::vector<std::string> prune(std::vector<std::string> tokens, const StopWords& stopwords) {
  std::erase_if(tokens, [&](const std::string& t) { return stopwords.contains(t); });
  return tokens;
}

Corpus build_corpus(std::vector<std::pair<std::string, std::string>> named_texts,
                    const StopWords& stopwords) {
  if (named_texts.empty()) fail(ErrorKind::CorpusEmpty, "no documents");
  std::sort(named_texts.begin(), named_texts.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });

  Corpus corpus;
  Fnv1a digest;
  std::vector<std::vector<TermCount>> columns;
  for (auto& [name, text] : named_texts) {
    if (!is_valid_utf8(text)) fail(ErrorKind::IngestError, name + ": invalid UTF-8");
    digest.update(name);
    digest.update(std::string_view("\0", 1));
    digest.update(text);
    digest.update(std::string_view("\0", 1));

    Document doc;
    doc.id = corpus.documents.size();
    doc.source_path = name;
    doc.tokens = prune(tokenize(text), stopwords);
    if (doc.tokens.empty()) fail(ErrorKind::DocumentEmpty, name + ": no tokens after pruning");

    std::map<std::uint32_t, std::uint32_t> counts;
    for (const auto& t : doc.tokens)
      ++counts[static_cast<std::uint32_t>(corpus.vocabulary.intern(t))];
    std::vector<TermCount> column;
    column.reserve(counts.size());
    for (auto [term, count] : counts) column.push_back({term, count});
    columns.push_back(std::move(column));
    corpus.documents.push_back(std::move(doc));
  }
  corpus.counts = TermDocMatrix(corpus.vocabulary.size(), std::move(columns));
  corpus.digest = digest.hex();
  return corpus;
}

Corpus load_corpus(const std::filesystem::path& dir, const StopWords& stopwords) {
  std::error_code ec;
  if (!std::filesystem::is_directory(dir, ec))
    fail(ErrorKind::IngestError, dir.string() + ": not a readable directory");

  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir, ec)) {
    if (entry.is_regular_file() && entry.path().extension() == ".txt")
      files.push_back(entry.path());
  }
  if (ec) fail(ErrorKind::IngestError, dir.string() + ": " + ec.message());
  if (files.empty()) fail(ErrorKind::CorpusEmpty, dir.string() + " contains no .txt files");

  std::vector<std::pair<std::string, std::string>> named;
  named.reserve(files.size());
  for (const auto& f : files)
    named.emplace_back(f.filename().string(), read_file(f, ErrorKind::IngestError));
  Corpus corpus = build_corpus(std::move(named), stopwords);
  for (auto& doc : corpus.documents) doc.source_path = dir / doc.source_path;
  return corpus;
}

Corpus load_corpus(const std::filesystem::path& dir, const std::filesystem::path& stopwords) {
  return load_corpus(dir, load_stopwords(stopwords));
}

}  // namespace ontoforge
