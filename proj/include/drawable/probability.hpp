#pragma once

namespace drawable {

// A probability strictly inside (0,1). Keeps min(p, 1-p) as a plain double next
// to (log p, log(1-p)), so values within one ulp of 0 or 1 retain their precision
// and values such as 1/16 or 0.8 read back exactly.
class Probability {
 public:
  static Probability from_value(double p);
  static Probability from_log(double log_p);
  static Probability from_log_complement(double log_q);
  static Probability from_logs(double log_p, double log_q);
  // Exact reconstruction from the stored representation (serialization).
  static Probability from_parts(double small, bool upper, double log_p, double log_q);

  double value() const noexcept { return upper_ ? 1.0 - small_ : small_; }
  double complement() const noexcept { return upper_ ? small_ : 1.0 - small_; }
  double small() const noexcept { return small_; }  // min(p, 1-p)
  bool upper() const noexcept { return upper_; }     // p > 1/2
  double log() const noexcept { return log_p_; }
  double log_complement() const noexcept { return log_q_; }
  // log p - log(1-p): strictly increasing in p and finite for every valid value.
  double logit() const noexcept { return log_p_ - log_q_; }
  double log_of(bool bit) const noexcept { return bit ? log_p_ : log_q_; }

  Probability flipped() const noexcept {
    return Probability(small_, !upper_, log_q_, log_p_);
  }

  friend bool operator==(const Probability&, const Probability&) = default;

 private:
  Probability(double small, bool upper, double lp, double lq)
      : small_(small), upper_(upper), log_p_(lp), log_q_(lq) {}
  double small_ = 0.5;
  bool upper_ = false;
  double log_p_ = 0.0;
  double log_q_ = 0.0;
};

// log(1 - exp(x)) for x <= 0, accurate on the whole range.
double log1mexp(double x) noexcept;

// True when `a` is strictly more likely than `b`.
inline bool more_likely(const Probability& a, const Probability& b) noexcept {
  return a.logit() > b.logit();
}

}  // namespace drawable
