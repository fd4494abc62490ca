#include "starforge/weight.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <random>
#include <thread>

#include "starforge/errors.hpp"

namespace starforge
{

double phi(std::complex<double> z1, std::complex<double> z2)
{
    if (z1 == z2)
        throw std::domain_error("coincident points in angle function");
    const std::complex<double> num = (z2 - z1) * (std::conj(z2) - z1);
    const std::complex<double> den = (z2 - std::conj(z1)) * (std::conj(z2) - std::conj(z1));
    // |num| = |den|, so the Log is purely imaginary
    const std::complex<double> ratio = num / den;
    // + 0.0 turns a negative zero into +0 so that Log(-1) = i pi
    return std::atan2(ratio.imag() + 0.0, ratio.real()) / 2.0;
}

namespace
{

using std::abs;

template <typename T> T abs_value(const T &v)
{
    return v < 0 ? T(-v) : v;
}

template <typename T> T determinant(std::vector<std::vector<T>> m)
{
    const std::size_t n = m.size();
    T det = 1;
    for (std::size_t c = 0; c < n; ++c)
    {
        std::size_t pivot = c;
        for (std::size_t r = c + 1; r < n; ++r)
            if (abs_value(m[r][c]) > abs_value(m[pivot][c]))
                pivot = r;
        if (m[pivot][c] == 0)
            return T(0);
        if (pivot != c)
        {
            std::swap(m[pivot], m[c]);
            det = -det;
        }
        det *= m[c][c];
        for (std::size_t r = c + 1; r < n; ++r)
        {
            if (m[r][c] == 0)
                continue;
            const T f = m[r][c] / m[c][c];
            for (std::size_t k = c; k < n; ++k)
                m[r][k] -= f * m[c][k];
        }
    }
    return det;
}

} // namespace

template <typename T> T form_density(const Graph &g, const std::vector<AnglePoint<T>> &z)
{
    const std::size_t n = g.n();
    if (z.size() != n)
        throw DimensionMismatch(n, z.size());
    if (n == 0)
        return T(1);
    for (const auto &p : z)
        if (!(p.y > 0))
            throw std::domain_error("internal vertex off the upper half-plane");
    std::vector<std::vector<T>> m(2 * n, std::vector<T>(2 * n, T(0)));
    for (std::size_t k = 0; k < n; ++k)
        for (int side = 0; side < 2; ++side)
        {
            const int t = side ? g[k].second : g[k].first;
            const AnglePoint<T> target = t == kLeft ? AnglePoint<T>{T(0), T(0)}
                                         : t == kRight ? AnglePoint<T>{T(1), T(0)}
                                                       : z[static_cast<std::size_t>(t)];
            const auto grad = phi_gradient(z[k], target);
            auto &row = m[2 * k + side];
            row[2 * k] += grad[0];
            row[2 * k + 1] += grad[1];
            if (t >= 0)
            {
                row[2 * t] += grad[2];
                row[2 * t + 1] += grad[3];
            }
        }
    return determinant(std::move(m));
}

template double form_density<double>(const Graph &, const std::vector<AnglePoint<double>> &);
template Rational form_density<Rational>(const Graph &, const std::vector<AnglePoint<Rational>> &);

double integrand(const Graph &g, const std::vector<AnglePoint<double>> &z)
{
    const std::size_t n = g.n();
    double norm = std::tgamma(static_cast<double>(n) + 1.0) * std::pow(2.0 * std::numbers::pi, 2.0 * n);
    return form_density(g, z) / norm;
}

std::string to_string(EstimateMethod m)
{
    return m == EstimateMethod::MonteCarloMean ? "mean" : "median-of-means";
}

unsigned default_workers()
{
    unsigned w = std::max(1u, std::thread::hardware_concurrency());
    if (const char *env = std::getenv("STARFORGE_THREADS"))
    {
        const long cap = std::strtol(env, nullptr, 10);
        if (cap >= 1)
            w = std::min(w, static_cast<unsigned>(cap));
    }
    return w;
}

namespace
{

struct BlockSums
{
    std::vector<double> sum;
    std::vector<double> sumsq;
    std::vector<std::uint64_t> count;

    explicit BlockSums(unsigned b) : sum(b, 0.0), sumsq(b, 0.0), count(b, 0) {}
};

void run_worker(const Graph &g, std::uint64_t samples, std::uint64_t seed, unsigned worker, unsigned workers,
                unsigned blocks, BlockSums &out)
{
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32), worker};
    std::mt19937_64 rng(seq);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    const std::size_t n = g.n();
    std::vector<AnglePoint<double>> z(n);
    const double pi = std::numbers::pi;

    for (std::uint64_t i = worker; i < samples; i += workers)
    {
        double jac = 0;
        while (true)
        {
            jac = 1.0;
            bool ok = true;
            for (std::size_t k = 0; k < n && ok; ++k)
            {
                const double u = uni(rng);
                const double t = uni(rng);
                if (u <= 0.0 || t <= 0.0)
                {
                    ok = false;
                    break;
                }
                z[k].x = std::tan(pi * (u - 0.5));
                z[k].y = t / (1.0 - t);
                jac *= pi * (1.0 + z[k].x * z[k].x) * (1.0 + z[k].y) * (1.0 + z[k].y);
            }
            // collision guard, boundary points included
            for (std::size_t a = 0; a < n && ok; ++a)
            {
                if (std::hypot(z[a].x, z[a].y) < 1e-9 || std::hypot(z[a].x - 1.0, z[a].y) < 1e-9)
                    ok = false;
                for (std::size_t b = a + 1; b < n && ok; ++b)
                    if (std::hypot(z[a].x - z[b].x, z[a].y - z[b].y) < 1e-9)
                        ok = false;
            }
            if (ok && std::isfinite(jac))
                break;
        }
        const double v = integrand(g, z) * jac;
        const unsigned b = static_cast<unsigned>((static_cast<unsigned __int128>(i) * blocks) / samples);
        out.sum[b] += v;
        out.sumsq[b] += v * v;
        ++out.count[b];
    }
}

} // namespace

WeightEstimate estimate_weight(const Graph &g, std::uint64_t samples, std::uint64_t seed,
                               const EstimateOptions &options)
{
    if (samples < 1)
        throw InvalidArgument("sample count must be positive");
    unsigned blocks = options.method == EstimateMethod::MedianOfMeans ? options.blocks : 1;
    if (blocks < 1)
        throw InvalidArgument("block count must be positive");
    blocks = static_cast<unsigned>(std::min<std::uint64_t>(blocks, samples));
    const unsigned workers =
        static_cast<unsigned>(std::min<std::uint64_t>(options.workers ? options.workers : default_workers(), samples));

    WeightEstimate est;
    est.graph = g.encode();
    est.samples = samples;
    est.seed = seed;
    est.method = options.method;
    est.workers = workers;
    if (g.n() == 0)
    {
        est.mean = 1.0;
        return est;
    }

    std::vector<BlockSums> parts(workers, BlockSums(blocks));
    if (workers == 1)
        run_worker(g, samples, seed, 0, 1, blocks, parts[0]);
    else
    {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w)
            pool.emplace_back(run_worker, std::cref(g), samples, seed, w, workers, blocks, std::ref(parts[w]));
        for (auto &t : pool)
            t.join();
    }

    BlockSums total(blocks);
    for (const auto &p : parts)
        for (unsigned b = 0; b < blocks; ++b)
        {
            total.sum[b] += p.sum[b];
            total.sumsq[b] += p.sumsq[b];
            total.count[b] += p.count[b];
        }

    if (options.method == EstimateMethod::MonteCarloMean)
    {
        const double n = static_cast<double>(samples);
        const double mean = total.sum[0] / n;
        const double var = samples > 1 ? (total.sumsq[0] / n - mean * mean) * n / (n - 1) : 0.0;
        est.mean = mean;
        est.std_error = std::sqrt(std::max(var, 0.0) / n);
        return est;
    }

    std::vector<double> means(blocks);
    for (unsigned b = 0; b < blocks; ++b)
        means[b] = total.sum[b] / static_cast<double>(total.count[b]);
    std::vector<double> sorted = means;
    std::sort(sorted.begin(), sorted.end());
    est.mean = blocks % 2 ? sorted[blocks / 2] : 0.5 * (sorted[blocks / 2 - 1] + sorted[blocks / 2]);
    if (blocks > 1)
    {
        // block means of a heavy-tailed integrand have outliers; take their
        // spread from the median absolute deviation
        std::vector<double> dev(blocks);
        for (unsigned b = 0; b < blocks; ++b)
            dev[b] = std::abs(means[b] - est.mean);
        std::sort(dev.begin(), dev.end());
        const double mad = blocks % 2 ? dev[blocks / 2] : 0.5 * (dev[blocks / 2 - 1] + dev[blocks / 2]);
        const double sd = 1.4826 * mad;
        // asymptotic efficiency of the median relative to the mean
        est.std_error = std::sqrt(std::numbers::pi / 2.0) * sd / std::sqrt(static_cast<double>(blocks));
    }
    return est;
}

// ---------------------------------------------------------------------------

std::string to_string(Provenance p)
{
    switch (p)
    {
    case Provenance::ExactPaper:
        return "exact-paper";
    case Provenance::ExactAnalytic:
        return "exact-analytic";
    case Provenance::Estimated:
        break;
    }
    return "estimated";
}

namespace
{

Provenance provenance_from_string(const std::string &s)
{
    if (s == "exact-paper")
        return Provenance::ExactPaper;
    if (s == "exact-analytic")
        return Provenance::ExactAnalytic;
    if (s == "estimated")
        return Provenance::Estimated;
    throw InvalidArgument("unknown provenance '" + s + "'");
}

} // namespace

void WeightTable::set_exact(const Graph &g, const Rational &w, Provenance p)
{
    const GraphClass cls = canonicalize(g);
    if (cls.odd_automorphism && sgn(w) != 0)
        throw InvalidArgument("graph " + g.encode() + " has an odd automorphism; its weight must vanish");
    Entry &e = entries_[cls.representative.encode()];
    e.exact = w * cls.sign;
    e.provenance = p;
}

void WeightTable::set_estimate(const Graph &g, const WeightEstimate &est)
{
    const GraphClass cls = canonicalize(g);
    Entry &e = entries_[cls.representative.encode()];
    WeightEstimate stored = est;
    stored.mean *= cls.sign;
    stored.graph = cls.representative.encode();
    e.estimate = stored;
    if (!e.exact)
        e.provenance = Provenance::Estimated;
}

const WeightTable::Entry *WeightTable::find(const std::string &canonical_key) const
{
    auto it = entries_.find(canonical_key);
    return it == entries_.end() ? nullptr : &it->second;
}

std::optional<WeightValue> WeightTable::lookup(const Graph &g) const
{
    const GraphClass cls = canonicalize(g);
    if (cls.odd_automorphism)
        return WeightValue{true, Rational(0), 0.0, 0.0};
    const Entry *e = find(cls.representative.encode());
    if (!e)
        return std::nullopt;
    if (e->exact)
    {
        const Rational v = *e->exact * cls.sign;
        return WeightValue{true, v, v.get_d(), 0.0};
    }
    if (e->estimate)
    {
        const double m = e->estimate->mean * cls.sign;
        return WeightValue{false, rational_from_double(m), m, e->estimate->std_error};
    }
    return std::nullopt;
}

void WeightTable::merge(const WeightTable &other)
{
    for (const auto &[key, e] : other.entries_)
    {
        Entry &mine = entries_[key];
        if (e.exact)
        {
            mine.exact = e.exact;
            mine.provenance = e.provenance;
        }
        if (e.estimate)
            mine.estimate = e.estimate;
        if (!mine.exact)
            mine.provenance = Provenance::Estimated;
    }
}

nlohmann::json WeightTable::to_json() const
{
    nlohmann::json out = nlohmann::json::array();
    for (const auto &[key, e] : entries_)
    {
        nlohmann::json j{{"graph", key}, {"provenance", to_string(e.provenance)}};
        if (e.exact)
            j["exact"] = to_string(*e.exact);
        if (e.estimate)
        {
            j["estimate"] = e.estimate->mean;
            j["stderr"] = e.estimate->std_error;
            j["samples"] = e.estimate->samples;
            j["seed"] = e.estimate->seed;
            j["method"] = to_string(e.estimate->method);
            j["workers"] = e.estimate->workers;
        }
        out.push_back(std::move(j));
    }
    return out;
}

WeightTable WeightTable::from_json(const nlohmann::json &j)
{
    if (!j.is_array())
        throw InvalidArgument("weight table JSON must be an array");
    WeightTable t;
    try
    {
        for (const auto &item : j)
        {
            const Graph g = Graph::decode(item.at("graph").get<std::string>());
            if (item.contains("exact"))
            {
                const auto &v = item["exact"];
                Rational w = v.is_string() ? parse_rational(v.get<std::string>()) : Rational(v.get<long>());
                Provenance p = item.contains("provenance")
                                   ? provenance_from_string(item["provenance"].get<std::string>())
                                   : Provenance::ExactAnalytic;
                if (p == Provenance::Estimated)
                    p = Provenance::ExactAnalytic;
                t.set_exact(g, w, p);
            }
            if (item.contains("estimate"))
            {
                WeightEstimate e;
                e.graph = g.encode();
                e.mean = item["estimate"].get<double>();
                e.std_error = item.value("stderr", 0.0);
                e.samples = item.value("samples", std::uint64_t{0});
                e.seed = item.value("seed", std::uint64_t{0});
                e.method = item.value("method", std::string("median-of-means")) == "mean"
                               ? EstimateMethod::MonteCarloMean
                               : EstimateMethod::MedianOfMeans;
                e.workers = item.value("workers", 1u);
                t.set_estimate(g, e);
            }
        }
    }
    catch (const nlohmann::json::exception &e)
    {
        throw InvalidArgument(std::string("malformed weight table: ") + e.what());
    }
    return t;
}

WeightTable WeightTable::seed_table()
{
    WeightTable t;
    const auto paper = Provenance::ExactPaper;
    t.set_exact(Graph(), 1, Provenance::ExactAnalytic);
    t.set_exact(Graph::decode("1:(L,R)"), Rational(1, 2), Provenance::ExactAnalytic);
    t.set_exact(Graph::decode("2:(L,R)(L,R)"), Rational(1, 8), paper);
    t.set_exact(Graph::decode("2:(2,L)(R,L)"), Rational(1, 24), paper);
    t.set_exact(Graph::decode("2:(2,R)(L,R)"), Rational(1, 24), paper);
    t.set_exact(Graph::decode("2:(L,2)(R,1)"), Rational(-1, 48), paper);
    for (const Graph &g : enumerate(2))
        if (is_bad(g))
            t.set_exact(g, 0, paper);
    return t;
}

std::optional<Rational> known_weight(const Graph &g, const WeightTable &table)
{
    auto v = table.lookup(g);
    if (v && v->exact)
        return v->value;
    return std::nullopt;
}

WeightValue factorized_weight(const Graph &g, const WeightTable &table)
{
    const auto parts = decompose(g);
    if (parts.size() < 2)
        throw InvalidArgument("graph " + g.encode() + " is indecomposable");
    WeightValue out{true, Rational(1), 1.0, 0.0};
    Rational pre = 1 / factorial(static_cast<unsigned>(g.n()));
    std::vector<WeightValue> factors;
    for (const Graph &c : parts)
    {
        pre *= factorial(static_cast<unsigned>(c.n()));
        auto v = table.lookup(c);
        if (!v)
            throw MissingWeight(canonicalize(c).representative.encode());
        out.exact = out.exact && v->exact;
        out.value *= v->value;
        out.mean *= v->mean;
        factors.push_back(*v);
    }
    out.value *= pre;
    out.mean *= pre.get_d();
    // first-order propagation: d(prod) = sum_i se_i prod_{j != i} m_j
    double var = 0;
    for (std::size_t i = 0; i < factors.size(); ++i)
    {
        double t = factors[i].std_error * pre.get_d();
        for (std::size_t j = 0; j < factors.size(); ++j)
            if (j != i)
                t *= factors[j].mean;
        var += t * t;
    }
    out.std_error = std::sqrt(var);
    return out;
}

} // namespace starforge
