#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "ntd/ontology.hpp"
#include "ntd/util.hpp"

namespace ntd {

namespace diff {
class Array;
}

// Lowercases, then splits on maximal runs of non-alphanumeric bytes.
// Non-ASCII bytes count as separators.
std::vector<std::string> tokenize(std::string_view text);

class Vocabulary {
 public:
  static constexpr int kPad = 0;
  static constexpr int kUnk = 1;

  // Keeps the max_size most frequent tokens; ties broken lexicographically
  // ascending. Deterministic given the corpus.
  static Vocabulary build(const std::vector<std::string>& texts, int max_size);

  int size() const { return static_cast<int>(id_to_token_.size()); }
  int encode(const std::string& token) const;  // OOV -> kUnk
  const std::string& decode(int id) const;
  bool contains(const std::string& token) const;
  const std::vector<std::string>& tokens() const { return id_to_token_; }

  uint64_t hash() const;

  static Vocabulary from_tokens(std::vector<std::string> id_to_token);

 private:
  std::vector<std::string> id_to_token_;
  std::unordered_map<std::string, int> token_to_id_;
};

struct Document {
  std::string doc_id;
  std::vector<int> tokens;       // vocabulary ids, length >= 1
  std::vector<NodeId> gold;      // ancestor-closed, sorted, root excluded
};

// One corpus record per line: {"doc_id": .., "text": .., "labels": [..]}.
struct RawRecord {
  std::string doc_id;
  std::string text;
  std::vector<std::string> labels;
};

std::vector<RawRecord> read_raw_corpus(const std::string& path);
void write_corpus(const std::string& path, const std::vector<RawRecord>& records);

// Tokenizes, encodes (OOV -> UNK), truncates to max_len, resolves labels and
// closes them under ancestors. Errors carry the offending line number.
std::vector<Document> make_documents(const std::vector<RawRecord>& records,
                                     const OntologyTree& tree,
                                     const Vocabulary& vocab, int max_len);

std::vector<Document> load_corpus(const std::string& path, const OntologyTree& tree,
                                  const Vocabulary& vocab, int max_len);

// Text format: `token v1 v2 ... v_d` per line. Rows of `emb` for tokens found
// in the file are overwritten. Returns the fraction of non-reserved vocabulary
// tokens covered.
double load_word_embeddings(const std::string& path, const Vocabulary& vocab,
                            diff::Array& emb);

// Same format keyed by node label.
double load_node_embeddings(const std::string& path, const OntologyTree& tree,
                            diff::Array& emb);

struct SynthSpec {
  int branching = 3;
  int depth = 3;              // edges from root to the deepest level
  int keywords_per_node = 1;
  int labels_per_doc = 3;
  double noise_rate = 0.1;    // fraction of emitted tokens that are noise
  int repeats = 2;            // copies of each keyword per gold-closure node
  double label_skew = 0.0;    // 0 = uniform; >0 = Zipf exponent over node ids
  uint64_t seed = 0;
};

struct SynthData {
  OntologyTree tree;
  std::vector<RawRecord> records;
};

// Complete b-ary label tree plus documents whose tokens are the keywords of
// their closed gold sets (noise_rate = 0 makes labels exactly recoverable).
// Fully determined by spec.seed.
SynthData gen_synthetic(const SynthSpec& spec, int n_docs);

}  // namespace ntd
