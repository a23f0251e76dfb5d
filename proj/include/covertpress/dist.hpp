#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace covertpress {

// Probability vector over a finite alphabet. Entries are validated to be
// non-negative and to sum to 1 within 1e-12 after construction.
class FiniteDist {
public:
    explicit FiniteDist(std::vector<double> probs);
    static FiniteDist bernoulli(double p1) { return FiniteDist({1.0 - p1, p1}); }
    static FiniteDist uniform(int alphabet_size);
    static FiniteDist point_mass(int alphabet_size, int symbol);

    int alphabet_size() const { return int(probs_.size()); }
    double operator[](int x) const { return probs_[size_t(x)]; }
    const std::vector<double>& probs() const { return probs_; }

    // min over the support; 0 when some symbol has zero probability
    double min_prob() const;
    bool full_support() const;

private:
    std::vector<double> probs_;
};

// Shannon entropy in bits, 0 log 0 = 0.
double entropy(const FiniteDist& d);
double binary_entropy(double p);

// KL divergence in bits; +infinity exactly when q(x)=0 < p(x) for some x.
double kl_div(const FiniteDist& p, const FiniteDist& q);

// Variational distance sum |p - q|, in [0, 2].
double var_dist(const FiniteDist& p, const FiniteDist& q);

// Divergence inequality suite used as a diagnostic everywhere else.
// All bounds are stated in bits with the sqrt(2 ln 2) constants kept
// verbatim from the nats-based derivations.
struct DivergenceReport {
    double kl_pq = 0;        // D(p||q)
    double vdist = 0;        // V(p, q)
    double entropy_gap = 0;  // H(q) - H(p), the middle bound's LHS
    double bound1_rhs = 0;   // log2(1/mu_q) V(p,q)
    double bound2_rhs = 0;
    double bound3_rhs = 0;
    bool holds1 = false;
    bool holds2 = false;
    bool holds3 = false;
};

DivergenceReport lemma1_report(const FiniteDist& p, const FiniteDist& q, const FiniteDist& r);

// JSON array of decimals; the parser renormalizes when the sum is within
// 1e-9 of 1 and rejects otherwise.
FiniteDist parse_dist_json(const std::string& text);
std::string dist_to_json(const FiniteDist& d);

}  // namespace covertpress
