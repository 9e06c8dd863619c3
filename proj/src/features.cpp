#include "fwa/features.hpp"

#include <algorithm>
#include <cassert>
#include <cctype>
#include <unordered_set>

namespace fwa {

namespace {

constexpr std::size_t kMaxAllFeatures = 20;
constexpr std::size_t kMaxFeatures = 64;  // products are 64-bit masks

void check_feature_names(const std::vector<std::string>& features) {
  if (features.size() > kMaxFeatures)
    throw ModelError("too many features (limit " + std::to_string(kMaxFeatures) + ")");
  std::unordered_set<std::string_view> seen;
  for (const auto& f : features) {
    if (f.empty()) throw ModelError("empty feature name");
    if (!seen.insert(f).second) throw ModelError("duplicate feature name '" + f + "'");
  }
}

}  // namespace

FeatureModel::FeatureModel(std::vector<std::string> features, std::vector<std::uint64_t> products)
    : features_(std::move(features)), products_(std::move(products)) {
  std::sort(products_.begin(), products_.end());
  products_.erase(std::unique(products_.begin(), products_.end()), products_.end());
  if (products_.empty()) throw ModelError("product set must be nonempty");
}

FeatureModelPtr FeatureModel::all_products(std::vector<std::string> features) {
  check_feature_names(features);
  if (features.size() > kMaxAllFeatures)
    throw ModelError("products:\"all\" supports at most " + std::to_string(kMaxAllFeatures) +
                     " features (got " + std::to_string(features.size()) + ")");
  const std::uint64_t count = std::uint64_t{1} << features.size();
  std::vector<std::uint64_t> products(count);
  for (std::uint64_t m = 0; m < count; ++m) products[m] = m;
  return FeatureModelPtr(new FeatureModel(std::move(features), std::move(products)));
}

FeatureModelPtr FeatureModel::explicit_products(
    std::vector<std::string> features, const std::vector<std::vector<std::string>>& products) {
  check_feature_names(features);
  std::vector<std::uint64_t> masks;
  masks.reserve(products.size());
  for (const auto& product : products) {
    std::uint64_t mask = 0;
    for (const auto& name : product) {
      auto it = std::find(features.begin(), features.end(), name);
      if (it == features.end()) throw ModelError("product uses unknown feature '" + name + "'");
      mask |= std::uint64_t{1} << static_cast<std::size_t>(it - features.begin());
    }
    masks.push_back(mask);
  }
  return FeatureModelPtr(new FeatureModel(std::move(features), std::move(masks)));
}

std::optional<std::size_t> FeatureModel::feature_index(std::string_view name) const {
  for (std::size_t i = 0; i < features_.size(); ++i)
    if (features_[i] == name) return i;
  return std::nullopt;
}

std::optional<std::size_t> FeatureModel::product_index(std::uint64_t mask) const {
  auto it = std::lower_bound(products_.begin(), products_.end(), mask);
  if (it == products_.end() || *it != mask) return std::nullopt;
  return static_cast<std::size_t>(it - products_.begin());
}

std::optional<std::size_t> FeatureModel::find_product(
    const std::vector<std::string>& features) const {
  std::uint64_t mask = 0;
  for (const auto& name : features) {
    auto idx = feature_index(name);
    if (!idx) return std::nullopt;
    mask |= std::uint64_t{1} << *idx;
  }
  return product_index(mask);
}

std::vector<std::string> FeatureModel::product_features(std::size_t index) const {
  std::vector<std::string> out;
  for (std::size_t f = 0; f < features_.size(); ++f)
    if (product_has_feature(index, f)) out.push_back(features_[f]);
  return out;
}

std::string FeatureModel::product_label(std::size_t index) const {
  std::string out = "{";
  bool first = true;
  for (std::size_t f = 0; f < features_.size(); ++f) {
    if (!product_has_feature(index, f)) continue;
    if (!first) out += ",";
    out += features_[f];
    first = false;
  }
  out += "}";
  return out;
}

// ---------------------------------------------------------------------------
// Guard

struct Guard::Node {
  enum class Kind { True, False, Atom, Not, And, Or };
  Kind kind;
  std::size_t feature = 0;  // Atom
  NodePtr left, right;      // Not uses left only
};

Guard Guard::constant(const FeatureModelPtr& model, bool value) {
  auto node = std::make_shared<Node>(Node{value ? Node::Kind::True : Node::Kind::False});
  ProductSet sat = value ? model->full_set() : model->empty_set();
  return Guard(model, std::move(node), std::move(sat));
}

Guard Guard::atom(const FeatureModelPtr& model, std::size_t feature) {
  assert(feature < model->num_features());
  auto node = std::make_shared<Node>(Node{Node::Kind::Atom, feature});
  ProductSet sat = model->empty_set();
  for (std::size_t p = 0; p < model->num_products(); ++p)
    if (model->product_has_feature(p, feature)) sat.set(p);
  return Guard(model, std::move(node), std::move(sat));
}

Guard operator&&(const Guard& a, const Guard& b) {
  assert(a.model_ == b.model_);
  auto node = std::make_shared<Guard::Node>(
      Guard::Node{Guard::Node::Kind::And, 0, a.expr_, b.expr_});
  return Guard(a.model_, std::move(node), a.sat_ & b.sat_);
}

Guard operator||(const Guard& a, const Guard& b) {
  assert(a.model_ == b.model_);
  auto node = std::make_shared<Guard::Node>(
      Guard::Node{Guard::Node::Kind::Or, 0, a.expr_, b.expr_});
  return Guard(a.model_, std::move(node), a.sat_ | b.sat_);
}

Guard operator!(const Guard& a) {
  auto node = std::make_shared<Guard::Node>(Guard::Node{Guard::Node::Kind::Not, 0, a.expr_});
  return Guard(a.model_, std::move(node), ~a.sat_);
}

namespace {

// Precedence for rendering: | = 1, & = 2, ! = 3.
void render(const Guard::Node& node, const FeatureModel& model, int parent_prec,
            std::string& out);

int prec_of(const Guard::Node& node) {
  using Kind = Guard::Node::Kind;
  switch (node.kind) {
    case Kind::Or: return 1;
    case Kind::And: return 2;
    case Kind::Not: return 3;
    default: return 4;
  }
}

void render(const Guard::Node& node, const FeatureModel& model, int parent_prec,
            std::string& out) {
  using Kind = Guard::Node::Kind;
  const int prec = prec_of(node);
  const bool parens = prec < parent_prec;
  if (parens) out += "(";
  switch (node.kind) {
    case Kind::True: out += "true"; break;
    case Kind::False: out += "false"; break;
    case Kind::Atom: out += model.feature_name(node.feature); break;
    case Kind::Not:
      out += "!";
      render(*node.left, model, 4, out);
      break;
    case Kind::And:
      render(*node.left, model, prec, out);
      out += " & ";
      render(*node.right, model, prec + 1, out);
      break;
    case Kind::Or:
      render(*node.left, model, prec, out);
      out += " | ";
      render(*node.right, model, prec + 1, out);
      break;
  }
  if (parens) out += ")";
}

}  // namespace

std::string Guard::to_string() const {
  if (!expr_) return "<null>";
  std::string out;
  render(*expr_, *model_, 0, out);
  return out;
}

// ---------------------------------------------------------------------------
// Parser: recursive descent over
//   or   := and ('|' and)*
//   and  := not ('&' not)*
//   not  := '!' not | primary
//   primary := ident | 'true' | 'false' | '(' or ')'

namespace {

class GuardParser {
 public:
  GuardParser(std::string_view text, const FeatureModelPtr& model)
      : text_(text), model_(model) {}

  Guard parse() {
    Guard g = parse_or();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected trailing input");
    return g;
  }

 private:
  [[noreturn]] void fail(const std::string& message) const {
    throw GuardParseError(message + " at position " + std::to_string(pos_), pos_);
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Guard parse_or() {
    Guard g = parse_and();
    while (eat('|')) g = g || parse_and();
    return g;
  }

  Guard parse_and() {
    Guard g = parse_not();
    while (eat('&')) g = g && parse_not();
    return g;
  }

  Guard parse_not() {
    if (eat('!')) return !parse_not();
    return parse_primary();
  }

  Guard parse_primary() {
    skip_ws();
    if (pos_ >= text_.size()) fail("expected guard expression");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Guard g = parse_or();
      if (!eat(')')) fail("expected ')'");
      return g;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
        ++pos_;
      std::string_view ident = text_.substr(start, pos_ - start);
      if (ident == "true") return Guard::constant(model_, true);
      if (ident == "false") return Guard::constant(model_, false);
      auto idx = model_->feature_index(ident);
      if (!idx) {
        pos_ = start;
        fail("unknown feature '" + std::string(ident) + "'");
      }
      return Guard::atom(model_, *idx);
    }
    fail(std::string("unexpected character '") + c + "'");
  }

  std::string_view text_;
  const FeatureModelPtr& model_;
  std::size_t pos_ = 0;
};

}  // namespace

Guard parse_guard(std::string_view text, const FeatureModelPtr& model) {
  return GuardParser(text, model).parse();
}

Guard characteristic_guard(std::size_t product, const FeatureModelPtr& model) {
  if (product >= model->num_products()) throw ModelError("product index out of range");
  std::optional<Guard> g;
  for (std::size_t f = 0; f < model->num_features(); ++f) {
    Guard lit = model->product_has_feature(product, f) ? Guard::atom(model, f)
                                                       : !Guard::atom(model, f);
    g = g ? (*g && lit) : lit;
  }
  if (!g) return Guard::constant(model, true);  // empty feature universe
  return *g;
}

bool is_partition(std::span<const Guard> guards, const FeatureModel& model) {
  ProductSet covered = model.empty_set();
  for (const Guard& g : guards) {
    if (g.sat().none()) return false;
    if ((covered & g.sat()).any()) return false;
    covered |= g.sat();
  }
  return covered.all();
}

GuardPartition GuardPartition::of(std::vector<Guard> guards, const FeatureModelPtr& model) {
  if (!is_partition(guards, *model)) throw ModelError("guards do not form a partition of px");
  return GuardPartition(std::move(guards));
}

GuardPartition GuardPartition::singleton_true(const FeatureModelPtr& model) {
  return GuardPartition({Guard::constant(model, true)});
}

std::size_t GuardPartition::block_of(std::size_t product) const {
  for (std::size_t i = 0; i < guards_.size(); ++i)
    if (guards_[i].covers(product)) return i;
  assert(false && "partition does not cover product");
  return 0;
}

IntersectedPartition intersect_partitions(const GuardPartition& p1, const GuardPartition& p2) {
  IntersectedPartition out;
  for (std::size_t i = 0; i < p1.size(); ++i) {
    for (std::size_t j = 0; j < p2.size(); ++j) {
      Guard g = p1[i] && p2[j];
      if (g.empty()) continue;
      out.guards.push_back(std::move(g));
      out.factors.emplace_back(i, j);
    }
  }
  return out;
}

}  // namespace fwa
