#include "freetop/scale.hpp"

#include <algorithm>

#include "freetop/errors.hpp"

namespace freetop {

PhiContext::PhiContext(std::shared_ptr<const IndexChain> chain) : chain_(std::move(chain)) {
  if (!chain_) throw Error("PhiContext needs a chain");
}

std::uint64_t PhiContext::phi(std::uint64_t n, const ReducedWord& w) const {
  std::lock_guard<std::mutex> lock(mutex_);
  return phi_locked(n, w);
}

std::uint64_t PhiContext::phi_locked(std::uint64_t n, const ReducedWord& w) const {
  if (w.empty()) return n;  // phi_n(e) = n, the base the translate family needs
  if (w.length() == 1) return n + w[0].index;

  Key key{n, w};
  if (auto it = memo_.find(key); it != memo_.end()) return it->second;

  std::vector<Letter> head(w.letters().begin(), w.letters().end() - 1);
  std::vector<Letter> tail(w.letters().begin() + 1, w.letters().end());
  const std::uint64_t a = phi_locked(n, ReducedWord::reduce(head));
  const std::uint64_t b = phi_locked(n, ReducedWord::reduce(tail));
  const std::uint64_t value = std::max(a + w.back().index, b + w.front().index);

  memo_.emplace(std::move(key), value);
  return value;
}

std::uint64_t PhiContext::phi_threshold(std::uint64_t n, const ReducedWord& g,
                                        const ReducedWord& h) const {
  return phi(n, multiply(g, h));
}

PhiTrace PhiContext::phi_explain(std::uint64_t n, const ReducedWord& w) const {
  if (w.length() > 12) throw Error("word too long for --explain (limit 12 letters)");

  PhiTrace node{n, w, 0, {}};
  if (w.empty()) {
    node.value = n;
    return node;
  }
  if (w.length() == 1) {
    node.value = n + w[0].index;
    return node;
  }
  std::vector<Letter> head(w.letters().begin(), w.letters().end() - 1);
  std::vector<Letter> tail(w.letters().begin() + 1, w.letters().end());
  PhiTrace left = phi_explain(n, ReducedWord::reduce(head));
  PhiTrace left_leaf = phi_explain(left.value, ReducedWord::reduce({w.back()}));
  PhiTrace right = phi_explain(n, ReducedWord::reduce(tail));
  PhiTrace right_leaf = phi_explain(right.value, ReducedWord::reduce({w.front()}));
  node.value = std::max(left_leaf.value, right_leaf.value);
  node.children.push_back(std::move(left));
  node.children.push_back(std::move(left_leaf));
  node.children.push_back(std::move(right));
  node.children.push_back(std::move(right_leaf));
  return node;
}

std::uint64_t phi_closed(std::uint64_t n, const ReducedWord& w) { return n + index_sum(w); }

}  // namespace freetop
