#include "cantor/lambda.hpp"

#include "cantor/errors.hpp"
#include "cantor/json_util.hpp"
#include "cantor/series.hpp"

namespace cantor {

LambdaSequence::LambdaSequence(std::vector<Rational> prefix, Rational tail_base,
                               Rational tail_ratio, unsigned bits)
    : prefix_(std::move(prefix)), tail_base_(std::move(tail_base)),
      tail_ratio_(std::move(tail_ratio)) {
  if (prefix_.empty()) throw DomainError("ratio sequence needs at least one explicit level");
  for (std::size_t i = 0; i < prefix_.size(); ++i) {
    if (prefix_[i] <= 0 || prefix_[i] >= 1) {
      throw DomainError("ratio at level " + std::to_string(i + 1) +
                        " must lie strictly inside (0, 1)");
    }
    if (i > 0 && prefix_[i] > prefix_[i - 1]) {
      throw DomainError("ratio sequence must be non-increasing (violated at level " +
                        std::to_string(i + 1) + ")");
    }
  }
  if (tail_base_ < 0) throw DomainError("tail_base must be non-negative");
  if (tail_ratio_ < 0 || tail_ratio_ > 1) throw DomainError("tail_ratio must lie in [0, 1]");
  if (!has_tail()) return;

  // Certify 1 - exp(-tail_base*tail_ratio) <= lambda_depth, i.e. that the
  // first implicit ratio keeps the sequence non-increasing.
  Rational first_exponent = tail_base_ * tail_ratio_;
  Rational threshold = 1 - prefix_.back();
  for (unsigned b = bits;; b *= 2) {
    Enclosure e = exp_neg_enclosure(first_exponent, b);
    if (e.lo >= threshold) return;
    if (e.hi < threshold) {
      throw DomainError("implicit tail breaks monotonicity: 1-exp(-tail_base*tail_ratio) "
                        "exceeds the last explicit ratio");
    }
    if (b >= kMaxPrecisionBits) {
      throw DomainError("cannot certify the tail continuation at the precision cap");
    }
  }
}

LambdaSequence LambdaSequence::truncated(std::vector<Rational> prefix) {
  return LambdaSequence(std::move(prefix), Rational(0), Rational(0));
}

const Rational& LambdaSequence::lambda(int n) const {
  if (n < 1 || n > depth()) {
    throw IndexOutOfRange("explicit ratio index " + std::to_string(n) + " outside 1.." +
                          std::to_string(depth()));
  }
  return prefix_[static_cast<std::size_t>(n - 1)];
}

Rational LambdaSequence::tail_exponent_sum(int n) const {
  if (n < depth()) {
    throw IndexOutOfRange("tail exponent sum defined for n >= depth only");
  }
  if (!has_tail()) return Rational(0);
  if (divergent_tail()) throw DomainError("tail exponent sum diverges (tail_ratio == 1)");
  // sum_{j > n} tail_base * ratio^(j-depth) = tail_base * ratio^(n-depth+1) / (1-ratio)
  Rational power = tail_base_;
  for (int j = 0; j < n - depth() + 1; ++j) power *= tail_ratio_;
  return power / (1 - tail_ratio_);
}

Enclosure LambdaSequence::tail_product(unsigned bits) const {
  if (!has_tail()) return Enclosure(Rational(1));
  if (divergent_tail()) return Enclosure(Rational(0));
  return exp_neg_enclosure(tail_exponent_sum(depth()), bits);
}

nlohmann::json LambdaSequence::to_json() const {
  nlohmann::json prefix = nlohmann::json::array();
  for (const Rational& l : prefix_) prefix.push_back(rat_to_json(l));
  return {{"depth", depth()},
          {"prefix", std::move(prefix)},
          {"tail_base", rat_to_json(tail_base_)},
          {"tail_ratio", rat_to_json(tail_ratio_)}};
}

LambdaSequence LambdaSequence::from_json(const nlohmann::json& doc, unsigned bits) {
  try {
    std::vector<Rational> prefix;
    for (const auto& item : doc.at("prefix")) prefix.push_back(rat_from_json(item));
    if (doc.contains("depth") &&
        doc.at("depth").get<int>() != static_cast<int>(prefix.size())) {
      throw ParseError("depth field disagrees with prefix length");
    }
    Rational base = doc.contains("tail_base") ? rat_from_json(doc.at("tail_base")) : Rational(0);
    Rational ratio = doc.contains("tail_ratio") ? rat_from_json(doc.at("tail_ratio")) : Rational(0);
    return LambdaSequence(std::move(prefix), std::move(base), std::move(ratio), bits);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("bad sequence document: ") + e.what());
  }
}

}  // namespace cantor
