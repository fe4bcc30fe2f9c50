#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ntd/corpus.hpp"
#include "ntd/diffcore.hpp"
#include "ntd/ontology.hpp"

namespace ntd {

struct ModelDims {
  int vocab = 0;
  int nodes = 0;
  int d_w = 32;
  int d_h = 64;
  int d_s = 64;
  int d_n = 16;
  int d_a = 32;
  // true = one attention MLP per node; false = shared MLP with a per-node
  // score vector. The factored form is the default.
  bool per_node_attention = false;
};

// All learnable arrays of the tree decoder. Param names group as:
// word_emb | enc_gru.* | node_emb | attn_shared.* | attn_node.* | dec_gru.* | out.*
struct ModelParams {
  ModelDims dims;
  diff::ParamStore store;

  static ModelParams init(const ModelDims& dims, uint64_t seed);
};

struct PredictionSet {
  std::vector<NodeId> applied;          // sorted, root excluded
  std::map<NodeId, double> scores;      // every child scored during traversal

  bool operator==(const PredictionSet&) const = default;
};

// applied + root forms a subtree: every applied node's parent is applied or
// is the root.
bool is_root_connected(const OntologyTree& tree, const std::vector<NodeId>& applied);

// One hidden vector per input token.
struct EncoderOutput {
  std::vector<diff::Var> h;
};

EncoderOutput encode(diff::Tape& t, const Document& doc, const ModelParams& mp);

// Node-conditioned attention over encoder states:
// score_j = u_n . tanh(Wa [s; h_j] + ba); alpha = softmax(scores);
// c = sum_j alpha_j h_j. Attention conditions on the incoming state.
struct Attention {
  diff::Var alpha;
  diff::Var context;
};
Attention attend(diff::Tape& t, diff::Var s, const EncoderOutput& enc, NodeId n,
                 const ModelParams& mp);

// (alpha, c_n) = attend(s_in, H, n); s_n = GRU([e_n; c_n], s_in).
struct StepOutput {
  diff::Var context;  // c_n
  diff::Var state;    // s_n
};
StepOutput step(diff::Tape& t, NodeId n, diff::Var s_in, const EncoderOutput& enc,
                const ModelParams& mp);

// yhat_v = sigmoid(W_v . [s_n; c_n] + b_v)
diff::Var score_child(diff::Tape& t, NodeId v, diff::Var s_n, diff::Var c_n,
                      const ModelParams& mp);

// Depth-first traversal from the root with a zero initial state. Children
// scoring above tau are applied and expanded with their parent's new state.
// Aborts (NumericError) once more than max_nodes nodes have been stepped into.
PredictionSet decode(const OntologyTree& tree, const ModelParams& mp,
                     const Document& doc, double tau, int max_nodes);

std::vector<PredictionSet> decode_corpus_serial(const OntologyTree& tree,
                                                const ModelParams& mp,
                                                const std::vector<Document>& docs,
                                                double tau, int max_nodes);
// OpenMP over documents; identical output to the serial reference.
std::vector<PredictionSet> decode_corpus_parallel(const OntologyTree& tree,
                                                  const ModelParams& mp,
                                                  const std::vector<Document>& docs,
                                                  double tau, int max_nodes);
std::vector<PredictionSet> decode_corpus(const OntologyTree& tree,
                                         const ModelParams& mp,
                                         const std::vector<Document>& docs,
                                         double tau, int max_nodes, bool parallel);

// Decides, per scored child, whether its loss term is incurred.
struct MaskSampler {
  virtual ~MaskSampler() = default;
  virtual bool include(NodeId v) = 0;
};

// Deterministic variant: every scored child incurs loss.
struct IncludeAllMask final : MaskSampler {
  bool include(NodeId) override { return true; }
};

// Stochastic variant: B_v ~ Bernoulli(p_v), drawn in traversal order from a
// dedicated stream, so a fixed seed reproduces the run bit-for-bit.
class BernoulliMask final : public MaskSampler {
 public:
  BernoulliMask(const FrequencyTable& freq, Rng& rng) : freq_(&freq), rng_(&rng) {}
  bool include(NodeId v) override { return rng_->bernoulli(freq_->p[v]); }

 private:
  const FrequencyTable* freq_;
  Rng* rng_;
};

// Teacher-forced training loss from node n downward: every child of a visited
// node is scored (and, mask permitting, adds a BCE term); recursion follows
// the gold subtree only.
diff::Var node_loss(diff::Tape& t, const OntologyTree& tree, const ModelParams& mp,
                    NodeId n, const EncoderOutput& enc, diff::Var s,
                    const std::vector<NodeId>& gold_closure, MaskSampler& mask);

// encode + node_loss from the root with s0 = 0.
diff::Var document_loss(diff::Tape& t, const OntologyTree& tree,
                        const ModelParams& mp, const Document& doc,
                        MaskSampler& mask);

// Self-contained checkpoint: dims, parameter arrays, and the vocabulary and
// ontology they were trained against (with integrity hashes).
struct Checkpoint {
  std::string model_kind;  // "ntd" or "flat"
  ModelParams params;      // ntd only
  Vocabulary vocab;
  OntologyTree tree;
  std::optional<double> flat_threshold;  // flat only, when threshold-swept
};

void save_checkpoint(const std::string& path, const Checkpoint& ckpt);
Checkpoint load_checkpoint(const std::string& path);

// Fixture for gradient validation: 7-node tree, 4-token document, small dims.
struct GradCheckFixture {
  OntologyTree tree;
  Document doc;
  ModelDims dims;
};
GradCheckFixture make_gradcheck_fixture(bool per_node_attention = false);

// Runs diffcore::grad_check over the full model loss on the fixture.
std::vector<diff::GradCheckEntry> run_model_grad_check(double step, double tolerance,
                                                       uint64_t seed,
                                                       bool per_node_attention = false);

}  // namespace ntd
