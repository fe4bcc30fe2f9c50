#pragma once

#include <functional>
#include <string>
#include <unordered_map>
#include <vector>

#include "ntd/util.hpp"

namespace ntd::diff {

// Dense rank-1 or rank-2 array of doubles. cols == 1 means column vector.
class Array {
 public:
  Array() = default;
  Array(int rows, int cols) : rows_(rows), cols_(cols), v_(size_t(rows) * cols, 0.0) {}
  explicit Array(std::vector<double> vec)
      : rows_(static_cast<int>(vec.size())), cols_(1), v_(std::move(vec)) {}

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  int size() const { return rows_ * cols_; }
  bool is_vector() const { return cols_ == 1; }

  double& operator()(int i) { return v_[i]; }
  double operator()(int i) const { return v_[i]; }
  double& operator()(int i, int j) { return v_[size_t(i) * cols_ + j]; }
  double operator()(int i, int j) const { return v_[size_t(i) * cols_ + j]; }

  double* data() { return v_.data(); }
  const double* data() const { return v_.data(); }

  void fill(double x) { std::fill(v_.begin(), v_.end(), x); }
  bool all_finite() const;
  bool same_shape(const Array& o) const { return rows_ == o.rows_ && cols_ == o.cols_; }

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<double> v_;
};

// Named parameter arrays plus matching gradient buffers. Insertion order is
// the canonical order for initialization, serialization and SGD.
class ParamStore {
 public:
  void add(const std::string& name, Array value);
  bool contains(const std::string& name) const;
  Array& value(const std::string& name);
  const Array& value(const std::string& name) const;
  Array& grad(const std::string& name);
  const std::vector<std::string>& names() const { return order_; }

  void zero_grads();
  double grad_norm() const;                 // global L2 over all arrays
  void clip_grad_norm(double max_norm);     // scales grads if norm exceeds
  void sgd_step(double lr);                 // value -= lr * grad
  bool values_finite() const;

  uint64_t init_seed = 0;

 private:
  struct Slot {
    Array value;
    Array grad;
  };
  std::vector<std::string> order_;
  std::unordered_map<std::string, Slot> slots_;
};

// Glorot-uniform matrix: entries ~ U(-b, b), b = sqrt(6/(rows+cols)).
Array glorot(int rows, int cols, Rng& rng);

struct Var {
  int id = -1;
  bool valid() const { return id >= 0; }
};

// Dynamic reverse-mode tape. Rebuilt per document: the traversed subtree and
// the token count vary per example. Ops record closures that scatter
// gradients back to their inputs; parameter leaves reference the ParamStore
// arrays directly (no copies) and accumulate into the store's grad buffers.
// A tape belongs to a single thread.
class Tape {
 public:
  // grads == nullptr builds a forward-only tape (inference).
  explicit Tape(const ParamStore* params, ParamStore* grads = nullptr);

  Var constant(Array value);
  Var zeros(int n);
  Var param(const std::string& name);

  Var add(Var a, Var b);             // elementwise, same shape
  Var hadamard(Var a, Var b);        // elementwise product
  Var concat(Var a, Var b);          // stacked vector
  Var one_minus(Var a);              // 1 - x elementwise
  Var matvec(Var w, Var x);          // full matrix
  Var matvec_rows(Var w, int row0, int nrows, Var x);  // row-block matvec
  Var row(Var m, int i);             // row i as a vector
  Var element(Var v, int i);         // single entry as a 1-vector
  Var dot(Var a, Var b);             // scalar
  Var stack(const std::vector<Var>& scalars);
  Var weighted_sum(const std::vector<Var>& vecs, Var weights);
  Var tanh(Var a);
  Var sigmoid(Var a);
  Var softmax(Var a);                // max-subtracted, numerically stable
  // -[y ln p + (1-y) ln(1-p)], p clamped to [eps, 1-eps], eps = 1e-7.
  Var bce(Var prob, int label);

  const Array& val(Var v) const;
  double scalar(Var v) const;
  const Array& grad_of(Var v) const;

  // Seeds d(loss)/d(loss) = 1 and walks the tape in reverse execution order.
  // Gradients accumulate additively across fan-out.
  void backward(Var scalar_loss);

  bool records_grads() const { return grads_ != nullptr; }
  int node_count() const { return static_cast<int>(nodes_.size()); }

  static constexpr double kBceEps = 1e-7;

 private:
  struct Node {
    Array value;
    Array grad;                      // allocated only when recording grads
    const Array* pvalue = nullptr;   // set for parameter leaves
    Array* pgrad = nullptr;          // grad target for parameter leaves
    std::function<void(Tape&)> back;
  };

  int push(Array value);
  Node& n(Var v) { return nodes_[v.id]; }
  // Adds g[0..len) into the gradient of `v` starting at flat offset.
  void accum(Var v, int offset, const double* g, int len);
  void check_vec(Var v, const char* op) const;

  const ParamStore* params_;
  ParamStore* grads_;
  std::vector<Node> nodes_;
  std::unordered_map<std::string, int> param_nodes_;
};

struct GruParams {
  Var wz, uz, bz, wr, ur, br, wh, uh, bh;
};

// z = sig(Wz x + Uz h + bz); r = sig(Wr x + Ur h + br);
// hcand = tanh(Wh x + Uh(r*h) + bh); h' = (1-z)*h + z*hcand.
Var gru_cell(Tape& t, Var x, Var h, const GruParams& p);

// Convenience: pulls <prefix>.Wz .. <prefix>.bh from the tape's store.
GruParams gru_params(Tape& t, const std::string& prefix);

// Registers the nine GRU arrays (input dim -> hidden dim) on a store.
void add_gru_params(ParamStore& store, const std::string& prefix, int input_dim,
                    int hidden_dim, Rng& rng);

struct GradCheckEntry {
  std::string group;      // parameter-name prefix before the first '.'
  int coords_checked = 0;
  double max_rel_err = 0.0;
  bool pass = false;
};

// loss_fn(params, want_grad): evaluates the loss, filling params' gradient
// buffers when want_grad is set. It must be deterministic — stochastic masks
// frozen — which is enforced by evaluating twice and refusing on mismatch.
// Per sampled coordinate: |analytic - central_fd| / max(1, |analytic|, |fd|).
std::vector<GradCheckEntry> grad_check(
    ParamStore& params,
    const std::function<double(ParamStore&, bool)>& loss_fn, double step,
    double tolerance, int max_coords_per_array, uint64_t seed);

}  // namespace ntd::diff
