#ifndef STARFORGE_WEIGHT_HPP
#define STARFORGE_WEIGHT_HPP

#include <array>
#include <complex>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "starforge/graph.hpp"
#include "starforge/rational.hpp"

namespace starforge
{

/// Point of the closed upper half-plane. Internal vertices have y > 0;
/// L and R sit at 0 and 1 on the real axis.
template <typename T> struct AnglePoint
{
    T x;
    T y;
};

/// Angle function on the principal branch. Throws on coincident points.
double phi(std::complex<double> z1, std::complex<double> z2);

/// (d/dx1, d/dy1, d/dx2, d/dy2) of the angle function. Writing u = z2 - z1
/// and v = conj(z2) - z1, dphi = d arg u + d arg v.
template <typename T> std::array<T, 4> phi_gradient(const AnglePoint<T> &z1, const AnglePoint<T> &z2)
{
    const T a = z2.x - z1.x;
    const T bu = z2.y - z1.y;
    const T bv = -z2.y - z1.y;
    const T nu = a * a + bu * bu;
    const T nv = a * a + bv * bv;
    if (nu == 0 || nv == 0)
        throw std::domain_error("coincident points in angle function");
    const T dx1 = bu / nu + bv / nv;
    const T dy1 = -a / nu - a / nv;
    const T dy2 = a / nu - a / nv;
    return {dx1, dy1, T(-dx1), dy2};
}

/// Density of the 2n-form wedge_k dphi(z_k, I_k) ^ dphi(z_k, J_k) with respect to
/// dx1 dy1 ... dxn dyn, without the normalization prefactor.
template <typename T> T form_density(const Graph &g, const std::vector<AnglePoint<T>> &z);

/// form_density / (n! (2 pi)^(2n)). Throws std::domain_error on degenerate input.
double integrand(const Graph &g, const std::vector<AnglePoint<double>> &z);

enum class EstimateMethod
{
    MonteCarloMean,
    MedianOfMeans
};

std::string to_string(EstimateMethod m);

struct EstimateOptions
{
    EstimateMethod method = EstimateMethod::MedianOfMeans;
    unsigned blocks = 32;
    /// 0 picks STARFORGE_THREADS or the hardware concurrency.
    unsigned workers = 0;
};

struct WeightEstimate
{
    /// Encoding of the graph that was integrated (not necessarily canonical).
    std::string graph;
    double mean = 0;
    double std_error = 0;
    std::uint64_t samples = 0;
    std::uint64_t seed = 0;
    EstimateMethod method = EstimateMethod::MedianOfMeans;
    unsigned workers = 1;

    friend bool operator==(const WeightEstimate &, const WeightEstimate &) = default;
};

/// Worker count honoring the STARFORGE_THREADS cap.
unsigned default_workers();

/// Monte Carlo over the upper half-plane with x = tan(pi(u - 1/2)),
/// y = t / (1 - t). Sample i goes to worker i mod W; each worker draws from
/// its own generator seeded by (seed, worker).
WeightEstimate estimate_weight(const Graph &g, std::uint64_t samples, std::uint64_t seed,
                               const EstimateOptions &options = {});

enum class Provenance
{
    ExactPaper,
    ExactAnalytic,
    Estimated
};

std::string to_string(Provenance p);

/// Exact value or an estimate with its standard error.
struct WeightValue
{
    bool exact = true;
    Rational value;
    double mean = 0;
    double std_error = 0;
};

/// Weights keyed by canonical encoding, stored for the class representative.
/// Exact entries shadow estimates.
class WeightTable
{
public:
    struct Entry
    {
        std::optional<Rational> exact;
        std::optional<WeightEstimate> estimate;
        Provenance provenance = Provenance::Estimated;
    };

    /// Value for `g` (any member of its class); sign-adjusted.
    void set_exact(const Graph &g, const Rational &w, Provenance p);
    void set_estimate(const Graph &g, const WeightEstimate &e);

    /// Lookup in representative terms, by canonical key.
    const Entry *find(const std::string &canonical_key) const;
    const std::map<std::string, Entry> &entries() const noexcept { return entries_; }
    std::size_t size() const noexcept { return entries_.size(); }

    /// Weight of `g`, exact if available, else estimated; absent otherwise.
    std::optional<WeightValue> lookup(const Graph &g) const;

    /// Adds entries from `other`; exact values override estimates.
    void merge(const WeightTable &other);

    nlohmann::json to_json() const;
    static WeightTable from_json(const nlohmann::json &j);

    /// n = 0, the n = 1 class, the four contributing n = 2 classes and the
    /// bad n = 2 classes.
    static WeightTable seed_table();

private:
    std::map<std::string, Entry> entries_;
};

/// Exact table value for `g`, or nullopt.
std::optional<Rational> known_weight(const Graph &g, const WeightTable &table);

/// w = (r_1! ... r_m! / n!) prod w(component). Throws InvalidArgument when
/// `g` is indecomposable and MissingWeight when a component is not in the table.
WeightValue factorized_weight(const Graph &g, const WeightTable &table);

class MissingWeight : public Error
{
public:
    explicit MissingWeight(const std::string &key) : Error("no weight for graph " + key), key(key) {}
    std::string key;
};

} // namespace starforge

#endif
