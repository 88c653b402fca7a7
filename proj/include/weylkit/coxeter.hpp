#pragma once

#include <cstdint>
#include <memory>
#include <mutex>
#include <string>
#include <unordered_map>
#include <vector>

namespace wk::cox {

using Gen = int;
using Word = std::vector<Gen>;
using GenMask = uint32_t;

class CoxeterSystem;
using SystemPtr = std::shared_ptr<const CoxeterSystem>;

struct VecHash {
  size_t operator()(const std::vector<uint16_t>& v) const {
    size_t h = 1469598103934665603ull;
    for (uint16_t x : v) { h ^= x; h *= 1099511628211ull; }
    return h;
  }
};

/// Element of a finite Weyl group stored as a permutation of the full root
/// set. Length is cached; descent queries are O(rank) on the right and
/// O(#roots) on the left (one inverse pass).
class WeylElement {
public:
  WeylElement() = default;
  WeylElement(SystemPtr sys, std::vector<uint16_t> perm);

  const SystemPtr& system() const { return sys_; }
  int length() const { return len_; }
  bool is_identity() const { return len_ == 0 && sys_ != nullptr; }

  // image of root index r under the element
  uint16_t act(uint16_t r) const { return perm_[r]; }
  const std::vector<uint16_t>& perm() const { return perm_; }

  // images of the simple roots; a complete invariant, used for hashing
  std::vector<uint16_t> key() const;

  WeylElement inverse() const;
  friend WeylElement operator*(const WeylElement& a, const WeylElement& b);
  WeylElement mul_gen_right(Gen i) const;  // w * s_i
  WeylElement mul_gen_left(Gen i) const;   // s_i * w

  bool operator==(const WeylElement& o) const;
  bool operator!=(const WeylElement& o) const { return !(*this == o); }
  bool operator<(const WeylElement& o) const;  // by (length, ShortLex word)

private:
  SystemPtr sys_;
  std::vector<uint16_t> perm_;
  int len_ = 0;
};

struct WeylHash {
  size_t operator()(const WeylElement& w) const { return VecHash{}(w.key()); }
};

/// A finite Weyl group with crystallographic root system, simple
/// reflections, Coxeter matrix and a diagram automorphism ("bullet").
/// Immutable after construction; all queries are safe to run concurrently.
class CoxeterSystem : public std::enable_shared_from_this<CoxeterSystem> {
public:
  // spec strings: "A3", "B4", "C2", "D4", "E6..E8", "F4", "G2";
  // a trailing '*' picks the nontrivial diagram flip (A_n, D_n, E6).
  static SystemPtr make(const std::string& spec);
  static SystemPtr make(char family, int rank,
                        const std::string& bullet_spec = "identity");
  static SystemPtr make(char family, int rank, std::vector<Gen> bullet);

  char family() const { return family_; }
  int rank() const { return rank_; }
  const std::string& name() const { return name_; }
  int coxeter_m(Gen i, Gen j) const { return coxmat_[i][j]; }
  int cartan(Gen i, Gen j) const { return cartan_[i][j]; }

  Gen bullet(Gen i) const { return bullet_[i]; }
  bool bullet_is_identity() const { return bullet_order_ == 1; }
  int bullet_order() const { return bullet_order_; }

  int num_positive_roots() const { return npos_; }
  int num_roots() const { return 2 * npos_; }
  // root r as integer coordinates in the simple-root basis
  const std::vector<int>& root(int r) const { return roots_[r]; }
  int simple_root_index(Gen i) const { return i; }  // simples come first
  uint16_t simple_act(Gen i, uint16_t r) const { return simple_perm_[i][r]; }
  uint16_t bullet_act(uint16_t r) const { return bullet_root_perm_[r]; }

  const std::string& label(Gen i) const { return labels_[i]; }
  Gen gen_by_label(const std::string& s) const;

  WeylElement identity() const;
  WeylElement generator(Gen i) const;
  WeylElement longest_element() const;

  uint64_t group_order() const;  // product of degrees, by type
  // Full BFS enumeration (cached, thread-safe). Throws for groups larger
  // than the desk-scale cap.
  const std::vector<WeylElement>& all_elements() const;

private:
  CoxeterSystem() = default;
  void build(char family, int rank, std::vector<Gen> bullet);

  std::string name_;
  char family_ = 0;
  int rank_ = 0;
  std::vector<std::string> labels_;
  std::vector<std::vector<int>> cartan_;
  std::vector<std::vector<int>> coxmat_;
  std::vector<Gen> bullet_;
  int bullet_order_ = 1;

  int npos_ = 0;
  std::vector<std::vector<int>> roots_;
  std::vector<std::vector<uint16_t>> simple_perm_;
  std::vector<uint16_t> bullet_root_perm_;

  mutable std::once_flag enum_once_;
  mutable std::vector<WeylElement> enum_cache_;
};

int length(const WeylElement& w);
GenMask right_descent_mask(const WeylElement& w);  // car(w)
GenMask left_descent_mask(const WeylElement& w);   // cl(w)
std::vector<Gen> right_descents(const WeylElement& w);
std::vector<Gen> left_descents(const WeylElement& w);
bool has_right_descent(const WeylElement& w, Gen i);
bool has_left_descent(const WeylElement& w, Gen i);

WeylElement multiply(const WeylElement& a, const WeylElement& b);
WeylElement invert(const WeylElement& a);

// ShortLex-minimal reduced word (smallest left descent first).
Word reduced_word(const WeylElement& w);
WeylElement evaluate(const SystemPtr& sys, const Word& word);
bool is_reduced(const SystemPtr& sys, const Word& word);

// k-th power of the diagram automorphism applied to w
WeylElement bullet_apply(const WeylElement& w, int k = 1);

GenMask support_mask(const WeylElement& w);
std::vector<Gen> support(const WeylElement& w);

// dot-separated generator labels, e.g. "1.2.1"; empty word is "e"
std::string format_word(const SystemPtr& sys, const Word& word);
std::string format_element(const WeylElement& w);
Word parse_word(const SystemPtr& sys, const std::string& text);

int element_order(const WeylElement& w);

}  // namespace wk::cox
