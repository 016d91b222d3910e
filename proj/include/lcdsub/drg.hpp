#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "lcdsub/int_matrix.hpp"
#include "lcdsub/schemes.hpp"

namespace lcdsub {

/// Simple undirected graph on {0..n-1}.
class Graph {
public:
    /// Throws NotSymmetric, or InvalidSpec for loops and non 0/1 entries.
    static Graph from_adjacency(IntMatrix adj);
    /// Throws IndexOutOfRange or InvalidSpec (loops).
    static Graph from_edges(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& edges);

    std::size_t vertex_count() const noexcept { return adj_.rows(); }
    const IntMatrix& adjacency() const noexcept { return adj_; }
    const std::vector<std::size_t>& neighbors(std::size_t v) const noexcept { return nbrs_[v]; }
    bool adjacent(std::size_t u, std::size_t v) const noexcept { return adj_(u, v) != 0; }

private:
    IntMatrix adj_;
    std::vector<std::vector<std::size_t>> nbrs_;
};

/// All-pairs distances by BFS. Throws Disconnected.
std::vector<std::vector<std::size_t>> distances(const Graph& g);

/// A_i[u][v] = 1 iff the distance from u to v is i, for i = 0..diameter. Throws Disconnected.
std::vector<IntMatrix> distance_matrices(const Graph& g);

struct IntersectionArray {
    std::vector<std::int64_t> b;  // b_0 .. b_{d-1}
    std::vector<std::int64_t> c;  // c_1 .. c_d

    std::size_t diameter() const noexcept { return b.size(); }
    /// b_i and c_i with the conventions b_d = c_0 = 0.
    std::int64_t b_at(std::size_t i) const noexcept { return i < b.size() ? b[i] : 0; }
    std::int64_t c_at(std::size_t i) const noexcept { return i == 0 ? 0 : c[i - 1]; }
    std::int64_t a_at(std::size_t i) const noexcept { return b[0] - b_at(i) - c_at(i); }
    /// k_0 .. k_d from k_{i+1} = k_i b_i / c_{i+1}. Throws NotDRG when not integral.
    std::vector<std::int64_t> valencies() const;
    std::string to_string() const;  // "{3,2;1,1}"
    bool operator==(const IntersectionArray&) const = default;
};

struct NotDrgWitness {
    std::size_t u = 0, v = 0;  // a pair at distance k whose count differs from the first such pair
    std::size_t k = 0;
    std::string what;
};

/// Exhaustive check: for every pair (u, v) at distance k, the numbers of neighbours of v
/// at distance k-1 and k+1 from u must depend on k only. Returns the first pair that breaks it.
std::variant<IntersectionArray, NotDrgWitness> intersection_array(const Graph& g);

/// Parses "{b_0,...;c_1,...}" (spaces allowed). Throws ParseError or InvalidSpec.
IntersectionArray parse_intersection_array(const std::string& text);

/// All p_{i,j}^k from the array alone, via the three-term recurrence for A_1 A_i.
/// Throws NotDRG when the array is infeasible (non-integral numbers).
IntersectionTensor intersection_numbers(const IntersectionArray& arr);

/// Distance scheme of a distance-regular graph. Throws NotDRG or Disconnected.
AssociationScheme scheme_from_drg(const Graph& g);

/// Permutations of {0..degree-1} given by image arrays.
class PermutationGroup {
public:
    /// Throws InvalidSpec when a generator is not a bijection of the right length.
    PermutationGroup(std::size_t degree, std::vector<std::vector<std::size_t>> generators);

    std::size_t degree() const noexcept { return degree_; }
    const std::vector<std::vector<std::size_t>>& generators() const noexcept { return gens_; }

private:
    std::size_t degree_;
    std::vector<std::vector<std::size_t>> gens_;
};

struct OrbitPartition {
    Partition partition;  // orbits sorted by smallest element
    bool equal_lengths = false;
};

/// Orbits of the group on the vertices. Every generator must be an automorphism
/// (NotAnAutomorphism otherwise); the resulting partition is asserted equitable for
/// every distance matrix (InternalInconsistency if that ever fails).
OrbitPartition orbit_partition(const PermutationGroup& group, const Graph& g);

}  // namespace lcdsub
