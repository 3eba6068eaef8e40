#include "freetop/chain.hpp"

#include <limits>

#include "freetop/errors.hpp"

namespace freetop {

ValuationChain::ValuationChain(std::uint64_t base) : base_(base) {
  if (base < 2) throw ParseError("chain base must be >= 2");
}

std::string ValuationChain::id() const {
  return base_ == 2 ? "dyadic" : "base:" + std::to_string(base_);
}

std::uint64_t ValuationChain::level(std::uint64_t m) const {
  std::uint64_t v = 0;
  std::uint64_t x = m + 1;
  while (x % base_ == 0) {
    x /= base_;
    ++v;
  }
  return v;
}

namespace {

std::uint64_t checked_pow(std::uint64_t b, std::uint64_t t) {
  std::uint64_t p = 1;
  for (std::uint64_t i = 0; i < t; ++i) {
    if (p > std::numeric_limits<std::uint64_t>::max() / b) {
      throw Error("chain level too deep: b^t overflows");
    }
    p *= b;
  }
  return p;
}

}  // namespace

std::uint64_t ValuationChain::level_member(std::uint64_t t, std::uint64_t i) const {
  // U_t = { c * b^t - 1 : c >= 1 }
  return (i + 1) * checked_pow(base_, t) - 1;
}

std::uint64_t ValuationChain::fiber_member(std::uint64_t t, std::uint64_t i) const {
  // fiber = { c * b^t - 1 : c >= 1, b does not divide c };
  // the (i+1)-th positive integer not divisible by b is q*b + r + 1
  // with i = q*(b-1) + r.
  const std::uint64_t q = i / (base_ - 1);
  const std::uint64_t r = i % (base_ - 1);
  const std::uint64_t c = q * base_ + r + 1;
  return c * checked_pow(base_, t) - 1;
}

std::shared_ptr<const IndexChain> make_chain(const std::string& id) {
  if (id.empty() || id == "dyadic") return std::make_shared<ValuationChain>(2);
  if (id.rfind("base:", 0) == 0) {
    std::uint64_t b = 0;
    try {
      b = std::stoull(id.substr(5));
    } catch (const std::exception&) {
      throw ParseError("bad chain id: " + id);
    }
    return std::make_shared<ValuationChain>(b);
  }
  throw ParseError("unknown chain id: " + id + " (expected dyadic or base:<b>)");
}

}  // namespace freetop
