#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "weavehash/groups.hpp"
#include "weavehash/pseudogroup.hpp"

namespace weavehash {

// Mesh S(L, n): one item per n-tuple of pseudogroup indices, closed back to
// the identity neighbourhood by the group-determined (n+1)-th element. Item
// quats are the products of the approximated weaves, not the exact group
// elements.
class Mesh {
 public:
  struct Item {
    std::array<std::uint8_t, 5> tuple;  // n indices + closing index
    Quat q;
  };

  Mesh(const FiniteGroup& group, Pseudogroup source, int n);

  int n() const { return n_; }
  int L() const { return source_.L(); }
  const Pseudogroup& source() const { return source_; }
  const std::vector<Item>& items() const { return items_; }
  const std::vector<Quat>& quats() const { return quats_; }  // same order
  double s0() const { return s0_; }  // sqrt(n+1) * mean pseudogroup error

  // Weave realizing item i (tuple words concatenated and reduced).
  BraidWord word(std::size_t i) const;
  // Unreduced crossing budget an applied item accounts for: (n+1) * L.
  int nominal_length() const { return (n_ + 1) * source_.L(); }

  // Item quats with duplicate families collapsed: tuples whose words cancel
  // or coincide algebraically land within float noise (~1e-13) of each
  // other, far below the separation of genuinely distinct products, and are
  // kept once. Input order is preserved for the survivors.
  std::vector<Quat> unique_quats() const;

 private:
  int n_;
  Pseudogroup source_;
  std::vector<Item> items_;
  std::vector<Quat> quats_;
  double s0_;
};

Mesh build_mesh(const FiniteGroup& group, const Pseudogroup& source, int n);

// key=value configuration for the hashing pipeline. Unknown keys are
// rejected; blank lines and '#' comments are skipped.
struct HashConfig {
  std::string group = "icosahedral";
  int L0 = 8;                        // preprocessor pseudogroup length
  int m = 3;                         // preprocessor product count
  int n = 3;                         // mesh tuple size
  std::vector<int> iterations;       // pseudogroup length per iteration
  double tail_quantile = 0.994;      // calibration quantile for thresholds
  int tail_delta = 4;                // fallback mesh uses L_i - tail_delta
  std::vector<double> tail_thresholds;  // per iteration; 0 disables
  std::string pseudogroup_dir = "data/pseudogroups";

  static HashConfig parse(const std::string& text);
  static HashConfig load(const std::string& path);
  std::string str() const;

  // <dir>/<group>-L<L>.pg
  std::string pseudogroup_path(int L) const;
  // Total nominal crossing count: m*L0 + sum (n+1)*L_i.
  int nominal_unreduced_length() const;
};

struct StageTrace {
  std::string stage;      // "preprocess", "iterate1", ...
  double error = 0.0;     // exact distance to the target after the stage
  int appended_len = 0;   // nominal unreduced crossings this stage added
  bool tail_used = false; // fallback mesh ran and won the stage
};

struct HashResult {
  BraidWord word;
  double error = 0.0;
  std::vector<StageTrace> trace;
  int unreduced_length = 0;  // sum of appended_len over the trace
};

// O^m table of pseudogroup-product quats scanned for the initial guess.
class Preprocessor {
 public:
  Preprocessor(const FiniteGroup& group, Pseudogroup source, int m);

  int m() const { return m_; }
  const std::vector<Quat>& quats() const { return quats_; }
  double mean_spacing_scale() const;  // sqrt(m) * mean pseudogroup error

  struct Pick {
    std::vector<int> tuple;
    Quat q;
  };
  Pick best(const Quat& target) const;
  BraidWord word(const Pick& pick) const;

 private:
  int m_;
  int order_;
  Pseudogroup source_;
  std::vector<Quat> quats_;
};

// Loads every pseudogroup the config needs, builds the preprocessor table
// and the per-iteration meshes (plus tail fallback meshes), then hashes
// targets. Pure once constructed; safe to share across threads.
class HashPipeline {
 public:
  explicit HashPipeline(const HashConfig& config);

  const HashConfig& config() const { return config_; }
  const FiniteGroup& group() const { return group_; }
  const Mesh& mesh(int iteration) const { return *meshes_.at(iteration); }
  const Mesh* tail_mesh(int iteration) const {
    return tail_meshes_.at(iteration) ? tail_meshes_.at(iteration).get() : nullptr;
  }
  const Preprocessor& preprocessor() const { return *pre_; }

  HashResult hash_target(const Gate& target) const;
  // Standard pipeline with every tail threshold ignored.
  HashResult hash_target_no_tail(const Gate& target) const;

 private:
  HashResult run(const Gate& target, bool allow_tail) const;

  HashConfig config_;
  FiniteGroup group_;
  std::unique_ptr<Preprocessor> pre_;
  std::vector<std::unique_ptr<Mesh>> meshes_;       // per iteration
  std::vector<std::unique_ptr<Mesh>> tail_meshes_;  // per iteration, may be null
};

// One mesh step applied to the running approximation: scans the mesh against
// the residual conj(current) * target and returns the improved word. The
// mesh's identity item makes the step non-worsening.
struct IterationState {
  BraidWord word;
  Quat approx;     // canonical evaluate_quat(word)
  double error;    // distance to target
};
IterationState iterate_once(const IterationState& current, const Quat& target,
                            const Mesh& mesh);

}  // namespace weavehash
