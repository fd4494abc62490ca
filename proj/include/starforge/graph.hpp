#ifndef STARFORGE_GRAPH_HPP
#define STARFORGE_GRAPH_HPP

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "starforge/lie_algebra.hpp"
#include "starforge/operators.hpp"

namespace starforge
{

/// Vertex labels: the two boundary vertices are negative, internal
/// vertices are 0..n-1 (printed 1..n). Numeric order gives L < R < 1 < ...
inline constexpr int kLeft = -2;
inline constexpr int kRight = -1;

/// Admissible graph: internal vertex k emits the ordered edge pair
/// (first, second) = (t(i_k), t(j_k)).
class Graph
{
public:
    using Edge = std::pair<int, int>;

    Graph() = default;
    /// Throws InvalidArgument on loops, parallel edges or bad targets.
    explicit Graph(std::vector<Edge> edges);

    std::size_t n() const noexcept { return edges_.size(); }
    const std::vector<Edge> &edges() const noexcept { return edges_; }
    const Edge &operator[](std::size_t k) const { return edges_[k]; }

    /// "n:(t1,u1)(t2,u2)..." with targets L, R or 1..n.
    std::string encode() const;
    static Graph decode(std::string_view text);

    /// Relabels vertex k as perm[k] and swaps the edge pair of k when bit k
    /// of `swaps` is set.
    Graph transformed(const std::vector<int> &perm, std::uint32_t swaps) const;

    /// Number of edges landing on `target`.
    unsigned in_degree(int target) const;

    friend bool operator==(const Graph &, const Graph &) = default;
    friend auto operator<=>(const Graph &a, const Graph &b) { return a.edges_ <=> b.edges_; }

private:
    std::vector<Edge> edges_;
};

/// All (n(n+1))^n admissible graphs on n internal vertices, in a fixed order.
std::vector<Graph> enumerate(unsigned n, unsigned cap = 4);

struct GraphClass
{
    /// Lexicographically minimal member.
    Graph representative;
    /// Number of labeled graphs in the class.
    std::size_t symmetry_count = 1;
    /// B_input = sign * B_representative (edge-swap parity).
    int sign = 1;
    /// The class has an automorphism with odd swap parity; its operator and
    /// weight vanish.
    bool odd_automorphism = false;
};

GraphClass canonicalize(const Graph &g);

struct GraphKind
{
    enum class Type
    {
        Bad,
        Wheel1,
        Wheel2,
        Union,
        Other
    };
    Type type = Type::Other;
    /// Wheel size for Wheel1/Wheel2.
    unsigned r = 0;
    /// Components for Union.
    std::vector<Graph> components;
};

std::string to_string(GraphKind::Type t);

/// L or R receives no edge (n >= 1).
bool is_bad(const Graph &g);
/// A directed cycle through internal vertices.
bool has_internal_cycle(const Graph &g);

/// Connected components of the internal vertices (L, R shared), each
/// relabeled in increasing order. Empty for n = 0.
std::vector<Graph> decompose(const Graph &g);

/// Wheel shapes: wheel1(r) = "(L,2)(R,3)...(R,1)", wheel2(r) = "(R,2)(R,3)...(R,1)".
Graph wheel1(unsigned r);
Graph wheel2(unsigned r);

/// Wheels are recognized first (up to isomorphism), then Bad, Union, Other.
GraphKind classify(const Graph &g);

/// sum over edge labelings of prod_k (d_{incoming} pi^{i_k j_k}) d_{into L} f d_{into R} g
BiDiffOperator bidiff_of_graph(const Graph &g, const PoissonTensor &pi);

} // namespace starforge

#endif
