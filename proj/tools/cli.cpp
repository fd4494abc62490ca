#include "cli.hpp"

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "starforge/enveloping.hpp"
#include "starforge/errors.hpp"
#include "starforge/graph.hpp"
#include "starforge/lie_algebra.hpp"
#include "starforge/parse.hpp"
#include "starforge/star_product.hpp"
#include "starforge/weight.hpp"

namespace starforge::cli
{

namespace
{

using json = nlohmann::json;

json read_json_file(const std::string &path)
{
    std::ifstream in(path);
    if (!in)
        throw InvalidArgument("cannot open " + path);
    try
    {
        return json::parse(in);
    }
    catch (const json::parse_error &e)
    {
        throw ParseError(e.byte, std::string("malformed JSON in ") + path);
    }
}

/// A catalog name, or a path to an algebra JSON file.
LieAlgebra load_algebra(const std::string &spec)
{
    if (std::filesystem::exists(spec))
        return algebra_from_json(read_json_file(spec));
    return catalog(spec);
}

WeightTable load_weights(const std::string &path)
{
    WeightTable t = WeightTable::seed_table();
    if (!path.empty())
    {
        WeightTable extra = WeightTable::from_json(read_json_file(path));
        // seed values win over file estimates, file exact values are kept
        extra.merge(t);
        t = std::move(extra);
    }
    return t;
}

json series_json(const HSeries &s)
{
    json coeffs = json::array();
    for (const auto &p : s.coefficients())
        coeffs.push_back(to_string(p));
    return {{"text", to_string(s)}, {"coefficients", coeffs}};
}

json estimated_orders(const std::vector<bool> &flags)
{
    json out = json::array();
    for (std::size_t r = 0; r < flags.size(); ++r)
        if (flags[r])
            out.push_back(r);
    return out;
}

std::string threads_setting()
{
    const char *env = std::getenv("STARFORGE_THREADS");
    return env ? env : "";
}

struct Outcome
{
    json results;
    json config = json::object();
    json provenance = json::object();
    bool ok = true;
    std::vector<std::string> text;
};

// ---------------------------------------------------------------------------

Outcome do_validate(const std::string &file, const std::string &name)
{
    Outcome o;
    const LieAlgebra g = file.empty() ? catalog(name) : algebra_from_json(read_json_file(file));
    o.config = {{"source", file.empty() ? "catalog:" + name : file}};
    json probe = json::array();
    bool nilpotent = true;
    for (unsigned r = 2; r <= 6; ++r)
    {
        const bool zero = trace_operator(g, r).is_zero();
        probe.push_back({{"r", r}, {"zero", zero}});
        nilpotent = nilpotent && zero;
    }
    const PoissonTensor pi = poisson_tensor(g);
    json tensor = json::object();
    for (std::size_t i = 0; i < g.dim(); ++i)
        for (std::size_t j = i + 1; j < g.dim(); ++j)
            if (!pi(i, j).is_zero())
                tensor["pi^" + std::to_string(i + 1) + std::to_string(j + 1)] = to_string(pi(i, j));
    o.results = {{"valid", true},
                 {"name", g.name()},
                 {"dim", g.dim()},
                 {"trace_probe", probe},
                 {"traces_vanish", nilpotent},
                 {"poisson_jacobi", pi.satisfies_jacobi()},
                 {"poisson", tensor}};
    o.text.push_back("algebra " + (g.name().empty() ? std::string("(unnamed)") : g.name()) + ", dim " +
                     std::to_string(g.dim()) + ": OK");
    o.text.push_back(nilpotent ? "trace probe D_2..D_6: all zero" : "trace probe: not all zero (not nilpotent)");
    for (const auto &[k, v] : tensor.items())
        o.text.push_back("  " + k + " = " + v.get<std::string>());
    return o;
}

struct ProductArgs
{
    std::string algebra, star = "gutt", f, g, weights;
    int order = -1;
    bool no_wheels = false;
};

Outcome do_product(const ProductArgs &a)
{
    Outcome o;
    const LieAlgebra alg = load_algebra(a.algebra);
    const Polynomial f = parse_poly(a.f, alg.dim()), g = parse_poly(a.g, alg.dim());
    o.config = {{"algebra", a.algebra}, {"star", a.star}, {"f", a.f}, {"g", a.g}};
    HSeries result;
    std::vector<bool> flags;
    if (a.star == "gutt")
    {
        result = gutt_product(f, g, alg);
        if (a.order >= 0)
            result = result.truncated(static_cast<unsigned>(a.order));
        flags.assign(result.order() + 1, false);
        o.config["order"] = a.order >= 0 ? json(a.order) : json("exact");
    }
    else if (a.star == "kontsevich")
    {
        const unsigned n = a.order >= 0 ? static_cast<unsigned>(a.order) : 2u;
        const StarProduct s = assemble_kontsevich(poisson_tensor(alg), n, load_weights(a.weights), !a.no_wheels);
        result = s.multiply(f, g);
        for (unsigned r = 0; r <= n; ++r)
            flags.push_back(s.estimated(r));
        o.config["order"] = n;
        o.config["include_wheels"] = !a.no_wheels;
        if (!a.weights.empty())
            o.config["weights"] = a.weights;
    }
    else
        throw InvalidArgument("unknown star product '" + a.star + "'");
    o.results = {{"product", series_json(result)}};
    o.provenance = {{"estimated_orders", estimated_orders(flags)}};
    o.text.push_back(to_string(result));
    for (std::size_t r = 0; r < flags.size(); ++r)
        if (flags[r])
        {
            o.text.push_back("(orders >= " + std::to_string(r) + " use estimated weights)");
            break;
        }
    return o;
}

Outcome do_compare(const std::string &algebra, unsigned order, unsigned degree, unsigned trials, std::uint64_t seed,
                   const std::string &weights)
{
    Outcome o;
    const LieAlgebra g = load_algebra(algebra);
    o.config = {{"algebra", algebra}, {"order", order}, {"degree", degree}, {"trials", trials}, {"seed", seed}};
    const EquivalenceReport rep = verify_equivalence(g, order, load_weights(weights), trials, seed, degree);
    json defects = json::array();
    for (unsigned r = 0; r <= order; ++r)
        defects.push_back({{"order", r}, {"max_defect", to_string(rep.max_defect[r])}});
    o.results = {{"per_order", defects},
                 {"failing_trials", rep.failing_trials},
                 {"rho_match", rep.rho_match},
                 {"rho_identity", rep.rho_identity},
                 {"notes", rep.notes}};
    o.provenance = {{"exact", rep.exact}};
    o.ok = rep.ok();
    for (unsigned r = 0; r <= order; ++r)
        o.text.push_back("h^" + std::to_string(r) + ": max defect " + to_string(rep.max_defect[r]));
    o.text.push_back(std::string("weyl_normalize vs closed form: ") + (rep.rho_match ? "match" : "MISMATCH"));
    if (rep.rho_identity)
        o.text.push_back("rho = identity");
    o.text.push_back(o.ok ? "equivalent through h^" + std::to_string(order) : "DEFECT");
    return o;
}

Outcome do_weights(unsigned n, std::uint64_t samples, std::uint64_t seed, const std::string &graph,
                   const std::string &out_path, unsigned blocks)
{
    Outcome o;
    o.config = {{"n", n}, {"samples", samples}, {"seed", seed}, {"blocks", blocks}, {"workers", default_workers()}};
    EstimateOptions opt;
    opt.blocks = blocks;

    std::vector<Graph> targets;
    if (!graph.empty())
    {
        targets.push_back(Graph::decode(graph));
        o.config["graph"] = graph;
    }
    else
        for (const GraphClass &cls : graph_classes(n))
            if (!is_bad(cls.representative) && !cls.odd_automorphism)
                targets.push_back(cls.representative);

    const WeightTable seed_table = WeightTable::seed_table();
    WeightTable table;
    json estimates = json::array();
    for (const Graph &g : targets)
    {
        const WeightEstimate e = estimate_weight(g, samples, seed, opt);
        table.set_estimate(g, e);
        const GraphClass cls = canonicalize(g);
        json item = {{"graph", g.encode()},
                     {"class", cls.representative.encode()},
                     {"symmetry_count", cls.symmetry_count},
                     {"kind", to_string(classify(g).type)},
                     {"estimate", e.mean},
                     {"stderr", e.std_error}};
        std::string line = g.encode() + "  " + std::to_string(e.mean) + " +- " + std::to_string(e.std_error);
        if (auto w = known_weight(g, seed_table))
        {
            const double z = e.std_error > 0 ? std::abs(e.mean - w->get_d()) / e.std_error : 0.0;
            item["exact"] = to_string(*w);
            item["within_3_stderr"] = z <= 3.0;
            line += "  (exact " + to_string(*w) + ")";
        }
        estimates.push_back(item);
        o.text.push_back(line);
    }
    // exact seed entries shadow the fresh estimates
    table.merge(seed_table);
    if (!out_path.empty())
    {
        std::ofstream file(out_path);
        if (!file)
            throw InvalidArgument("cannot write " + out_path);
        file << table.to_json().dump(2) << "\n";
        if (!file)
            throw InvalidArgument("cannot write " + out_path);
        o.config["out"] = out_path;
        o.text.push_back("wrote " + out_path);
    }
    o.results = {{"estimates", estimates}};
    o.provenance = {{"method", to_string(opt.method)}};
    return o;
}

Outcome do_rho(const std::string &algebra, unsigned order, const std::string &weights)
{
    Outcome o;
    const LieAlgebra g = load_algebra(algebra);
    o.config = {{"algebra", algebra}, {"order", order}};
    const EquivalenceOperator rho = kontsevich_gutt_rho(g, order, load_weights(weights));
    json exponent = json::array();
    for (const auto &t : rho.exponent())
    {
        // estimated coefficients are binary fractions; decimal reads better
        std::ostringstream dec;
        dec << std::setprecision(6) << t.coefficient.get_d();
        const std::string coeff = t.estimated ? dec.str() : to_string(t.coefficient);
        exponent.push_back({{"r", t.r},
                            {"coefficient", coeff},
                            {"D", to_string(t.op)},
                            {"estimated", t.estimated}});
        o.text.push_back("exponent h^" + std::to_string(t.r) + ": " + coeff + " * (" +
                         to_string(t.op) + ")" + (t.estimated ? "  [estimated]" : ""));
    }
    json terms = json::array();
    std::vector<bool> flags;
    for (unsigned r = 0; r <= rho.order(); ++r)
    {
        terms.push_back({{"r", r}, {"operator", to_string(rho.term(r))}});
        flags.push_back(rho.estimated(r));
        if (r > 0 && !rho.term(r).is_zero())
            o.text.push_back("rho_" + std::to_string(r) + " = " + to_string(rho.term(r)));
    }
    if (rho.is_identity())
        o.text.push_back("rho = identity");
    o.results = {{"exponent", exponent}, {"terms", terms}, {"identity", rho.is_identity()}};
    o.provenance = {{"estimated_orders", estimated_orders(flags)}};
    return o;
}

void emit(std::ostream &out, const std::string &command, const Outcome &o, double ms, bool pretty)
{
    if (pretty)
    {
        for (const auto &line : o.text)
            out << line << "\n";
        return;
    }
    json report = {{"command", command}, {"ok", o.ok},          {"config", o.config},
                   {"results", o.results}, {"provenance", o.provenance}, {"wall_clock_ms", ms},
                   {"threads", threads_setting()}};
    out << report.dump(2) << "\n";
}

} // namespace

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err)
{
    CLI::App app{"Gutt and Kontsevich star-products on the dual of a Lie algebra"};
    app.require_subcommand(1);
    bool pretty = false;
    app.add_flag("--pretty", pretty, "human-readable text instead of JSON");

    auto *validate = app.add_subcommand("validate", "check an algebra");
    std::string v_file, v_catalog;
    auto *opt_file = validate->add_option("--file", v_file, "algebra JSON file");
    auto *opt_cat = validate->add_option("--catalog", v_catalog, "catalog name");
    opt_file->excludes(opt_cat);
    validate->add_flag("--pretty", pretty);

    auto *product = app.add_subcommand("product", "evaluate f * g");
    ProductArgs pa;
    product->add_option("--algebra", pa.algebra, "catalog name or JSON file")->required();
    product->add_option("--star", pa.star, "gutt or kontsevich")->check(CLI::IsMember({"gutt", "kontsevich"}));
    product->add_option("--order", pa.order, "truncation order");
    product->add_option("--f", pa.f)->required();
    product->add_option("--g", pa.g)->required();
    product->add_option("--weights", pa.weights, "weight table JSON");
    product->add_flag("--no-wheels", pa.no_wheels, "drop graphs with internal cycles");
    product->add_flag("--pretty", pretty);

    auto *compare = app.add_subcommand("compare", "check rho(f *G g) = rho(f) *K rho(g)");
    std::string c_algebra, c_weights;
    unsigned c_order = 2, c_degree = 4, c_trials = 20;
    std::uint64_t c_seed = 1;
    compare->add_option("--algebra", c_algebra)->required();
    compare->add_option("--order", c_order);
    compare->add_option("--degree", c_degree);
    compare->add_option("--trials", c_trials);
    compare->add_option("--seed", c_seed);
    compare->add_option("--weights", c_weights);
    compare->add_flag("--pretty", pretty);

    auto *weights = app.add_subcommand("weights", "estimate graph weights");
    unsigned w_n = 2, w_blocks = 32;
    std::uint64_t w_samples = 100000, w_seed = 1;
    std::string w_graph, w_out;
    weights->add_option("--n", w_n);
    weights->add_option("--samples", w_samples);
    weights->add_option("--seed", w_seed);
    weights->add_option("--graph", w_graph, "single graph encoding");
    weights->add_option("--out", w_out, "weight table output file");
    weights->add_option("--blocks", w_blocks);
    weights->add_flag("--pretty", pretty);

    auto *rho = app.add_subcommand("rho", "equivalence operator");
    std::string r_algebra, r_weights;
    unsigned r_order = 2;
    rho->add_option("--algebra", r_algebra)->required();
    rho->add_option("--order", r_order);
    rho->add_option("--weights", r_weights);
    rho->add_flag("--pretty", pretty);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try
    {
        app.parse(reversed);
    }
    catch (const CLI::ParseError &e)
    {
        if (e.get_exit_code() == 0)
        {
            out << app.help();
            return 0;
        }
        err << e.what() << "\n";
        return 2;
    }

    std::string command;
    for (const auto &a : args)
        command += (command.empty() ? "" : " ") + a;

    const auto start = std::chrono::steady_clock::now();
    try
    {
        Outcome o;
        if (validate->parsed())
        {
            if (v_file.empty() && v_catalog.empty())
                throw InvalidArgument("validate needs --file or --catalog");
            o = do_validate(v_file, v_catalog);
        }
        else if (product->parsed())
            o = do_product(pa);
        else if (compare->parsed())
            o = do_compare(c_algebra, c_order, c_degree, c_trials, c_seed, c_weights);
        else if (weights->parsed())
            o = do_weights(w_n, w_samples, w_seed, w_graph, w_out, w_blocks);
        else
            o = do_rho(r_algebra, r_order, r_weights);
        const double ms =
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
        emit(out, command, o, ms, pretty);
        return o.ok ? 0 : 1;
    }
    catch (const std::exception &e)
    {
        if (pretty)
            err << "error: " << e.what() << "\n";
        else
            out << json{{"command", command}, {"ok", false}, {"error", e.what()}}.dump(2) << "\n";
        return 1;
    }
}

} // namespace starforge::cli
