#include "covertpress/dist.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <json.hpp>

namespace covertpress {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kSqrt2Ln2 = 1.1774100225154746910;  // sqrt(2 ln 2)
}  // namespace

FiniteDist::FiniteDist(std::vector<double> probs) : probs_(std::move(probs)) {
    if (probs_.empty()) throw std::invalid_argument("empty distribution");
    double sum = 0;
    for (double p : probs_) {
        if (!(p >= 0)) throw std::invalid_argument("negative probability");
        sum += p;
    }
    if (std::abs(sum - 1.0) > 1e-12) throw std::invalid_argument("probabilities must sum to 1");
}

FiniteDist FiniteDist::uniform(int alphabet_size) {
    if (alphabet_size < 1) throw std::invalid_argument("alphabet size < 1");
    return FiniteDist(std::vector<double>(size_t(alphabet_size), 1.0 / alphabet_size));
}

FiniteDist FiniteDist::point_mass(int alphabet_size, int symbol) {
    if (symbol < 0 || symbol >= alphabet_size) throw std::invalid_argument("symbol out of range");
    std::vector<double> p(size_t(alphabet_size), 0.0);
    p[size_t(symbol)] = 1.0;
    return FiniteDist(std::move(p));
}

double FiniteDist::min_prob() const {
    return *std::min_element(probs_.begin(), probs_.end());
}

bool FiniteDist::full_support() const { return min_prob() > 0; }

double entropy(const FiniteDist& d) {
    double h = 0;
    for (double p : d.probs())
        if (p > 0) h -= p * std::log2(p);
    return std::max(h, 0.0);
}

double binary_entropy(double p) {
    if (p <= 0 || p >= 1) return 0.0;
    return -p * std::log2(p) - (1 - p) * std::log2(1 - p);
}

double kl_div(const FiniteDist& p, const FiniteDist& q) {
    if (p.alphabet_size() != q.alphabet_size())
        throw std::invalid_argument("kl_div: alphabet mismatch");
    double d = 0;
    for (int x = 0; x < p.alphabet_size(); ++x) {
        if (p[x] == 0) continue;
        if (q[x] == 0) return kInf;
        d += p[x] * std::log2(p[x] / q[x]);
    }
    return std::max(d, 0.0);
}

double var_dist(const FiniteDist& p, const FiniteDist& q) {
    if (p.alphabet_size() != q.alphabet_size())
        throw std::invalid_argument("var_dist: alphabet mismatch");
    double v = 0;
    for (int x = 0; x < p.alphabet_size(); ++x) v += std::abs(p[x] - q[x]);
    return v;
}

DivergenceReport lemma1_report(const FiniteDist& p, const FiniteDist& q, const FiniteDist& r) {
    if (p.alphabet_size() != q.alphabet_size() || p.alphabet_size() != r.alphabet_size())
        throw std::invalid_argument("lemma1_report: alphabet mismatch");
    if (!q.full_support())
        throw std::invalid_argument("lemma1_report: q must have full support");

    const double log_inv_mu = std::log2(1.0 / q.min_prob());
    DivergenceReport rep;
    rep.kl_pq = kl_div(p, q);
    rep.vdist = var_dist(p, q);
    rep.entropy_gap = entropy(q) - entropy(p);

    rep.bound1_rhs = log_inv_mu * rep.vdist;

    // When one direction diverges, the min picks the finite one.
    double min_pq = std::min(rep.kl_pq, kl_div(q, p));
    rep.bound2_rhs = rep.kl_pq + log_inv_mu * kSqrt2Ln2 * std::sqrt(min_pq);

    double min_pr = std::min(kl_div(p, r), kl_div(r, p));
    double min_qr = std::min(kl_div(q, r), kl_div(r, q));
    rep.bound3_rhs = log_inv_mu * kSqrt2Ln2 * (std::sqrt(min_pr) + std::sqrt(min_qr));

    constexpr double slack = 1e-9;
    rep.holds1 = rep.kl_pq <= rep.bound1_rhs + slack;
    rep.holds2 = rep.entropy_gap <= rep.bound2_rhs + slack;
    rep.holds3 = rep.kl_pq <= rep.bound3_rhs + slack;
    return rep;
}

FiniteDist parse_dist_json(const std::string& text) {
    auto j = nlohmann::json::parse(text);
    if (!j.is_array()) throw std::invalid_argument("distribution JSON must be an array");
    std::vector<double> p = j.get<std::vector<double>>();
    double sum = 0;
    for (double v : p) {
        if (!(v >= 0)) throw std::invalid_argument("negative probability in JSON");
        sum += v;
    }
    if (std::abs(sum - 1.0) > 1e-9)
        throw std::invalid_argument("distribution does not sum to 1 within 1e-9");
    for (double& v : p) v /= sum;
    return FiniteDist(std::move(p));
}

std::string dist_to_json(const FiniteDist& d) {
    return nlohmann::json(d.probs()).dump();
}

}  // namespace covertpress
