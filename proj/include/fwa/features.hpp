#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <boost/dynamic_bitset.hpp>

namespace fwa {

/// Set of products, as a bitset indexed by FeatureModel product index.
using ProductSet = boost::dynamic_bitset<>;

class FeatureModel;
using FeatureModelPtr = std::shared_ptr<const FeatureModel>;

struct ModelError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// The feature universe N together with the finite product set px ⊆ 2^N.
/// Products are stored as bitmasks over the feature ordering, sorted and
/// deduplicated, so every product has a stable index.
class FeatureModel {
 public:
  /// px = all 2^|N| subsets. Hard limit of 20 features.
  static FeatureModelPtr all_products(std::vector<std::string> features);

  /// px = the given list of products, each a set of feature names.
  /// Duplicate products collapse; the set must be nonempty.
  static FeatureModelPtr explicit_products(std::vector<std::string> features,
                                           const std::vector<std::vector<std::string>>& products);

  std::size_t num_features() const { return features_.size(); }
  std::size_t num_products() const { return products_.size(); }
  const std::vector<std::string>& features() const { return features_; }
  const std::string& feature_name(std::size_t i) const { return features_[i]; }

  std::optional<std::size_t> feature_index(std::string_view name) const;

  std::uint64_t product_mask(std::size_t index) const { return products_[index]; }
  std::optional<std::size_t> product_index(std::uint64_t mask) const;

  /// Product index for a list of feature names; nullopt if not in px.
  std::optional<std::size_t> find_product(const std::vector<std::string>& features) const;

  bool product_has_feature(std::size_t product, std::size_t feature) const {
    return (products_[product] >> feature) & 1u;
  }

  /// Feature names of one product, in feature order.
  std::vector<std::string> product_features(std::size_t index) const;
  /// "{a,b}" rendering, "{}" for the empty product.
  std::string product_label(std::size_t index) const;

  ProductSet empty_set() const { return ProductSet(products_.size()); }
  ProductSet full_set() const { return ~ProductSet(products_.size()); }

 private:
  FeatureModel(std::vector<std::string> features, std::vector<std::uint64_t> products);

  std::vector<std::string> features_;
  std::vector<std::uint64_t> products_;  // sorted, unique
};

struct GuardParseError : std::runtime_error {
  GuardParseError(const std::string& message, std::size_t position)
      : std::runtime_error(message), position(position) {}
  std::size_t position;  // byte offset into the input text
};

/// A Boolean feature expression together with its memoized satisfaction set.
/// The formula tree is kept for display only; all semantics (equality,
/// disjointness, emptiness) go through the product bitset.
class Guard {
 public:
  Guard() = default;

  static Guard constant(const FeatureModelPtr& model, bool value);
  static Guard atom(const FeatureModelPtr& model, std::size_t feature);

  friend Guard operator&&(const Guard& a, const Guard& b);
  friend Guard operator||(const Guard& a, const Guard& b);
  friend Guard operator!(const Guard& a);

  const ProductSet& sat() const { return sat_; }
  bool empty() const { return sat_.none(); }
  bool covers(std::size_t product) const { return sat_.test(product); }
  const FeatureModelPtr& model() const { return model_; }

  /// Semantic equality: equal satisfaction sets.
  friend bool operator==(const Guard& a, const Guard& b) { return a.sat_ == b.sat_; }
  friend bool operator!=(const Guard& a, const Guard& b) { return !(a == b); }

  /// Renders the formula in the input grammar (minimal parentheses).
  std::string to_string() const;

 private:
  struct Node;
  using NodePtr = std::shared_ptr<const Node>;

  Guard(FeatureModelPtr model, NodePtr expr, ProductSet sat)
      : model_(std::move(model)), expr_(std::move(expr)), sat_(std::move(sat)) {}

  FeatureModelPtr model_;
  NodePtr expr_;
  ProductSet sat_;
};

/// Grammar: atoms [A-Za-z_][A-Za-z0-9_]*, constants true/false,
/// ! (prec 3), & (prec 2), | (prec 1), parentheses, left-associative.
/// Throws GuardParseError on syntax errors and unknown feature names.
Guard parse_guard(std::string_view text, const FeatureModelPtr& model);

/// ⋀_{f∈p} f ∧ ⋀_{f∉p} ¬f; satisfies exactly {p}.
Guard characteristic_guard(std::size_t product, const FeatureModelPtr& model);

/// True iff the guards' satisfaction sets are nonempty, pairwise disjoint,
/// and jointly cover all products.
bool is_partition(std::span<const Guard> guards, const FeatureModel& model);

/// A validated guard partition of px.
class GuardPartition {
 public:
  static GuardPartition of(std::vector<Guard> guards, const FeatureModelPtr& model);
  static GuardPartition singleton_true(const FeatureModelPtr& model);

  const std::vector<Guard>& guards() const { return guards_; }
  std::size_t size() const { return guards_.size(); }
  const Guard& operator[](std::size_t i) const { return guards_[i]; }

  /// Index of the unique block satisfied by the product.
  std::size_t block_of(std::size_t product) const;

 private:
  explicit GuardPartition(std::vector<Guard> guards) : guards_(std::move(guards)) {}
  std::vector<Guard> guards_;
};

/// Intersection P1 ∧ P2 with per-block back-references to the unique factors.
struct IntersectedPartition {
  std::vector<Guard> guards;
  std::vector<std::pair<std::size_t, std::size_t>> factors;  // (index in P1, index in P2)
};

IntersectedPartition intersect_partitions(const GuardPartition& p1, const GuardPartition& p2);

}  // namespace fwa
