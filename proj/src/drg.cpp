#include "lcdsub/drg.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <numeric>
#include <sstream>

#include "lcdsub/error.hpp"

namespace lcdsub {

Graph Graph::from_adjacency(IntMatrix adj) {
    if (!adj.is_square()) throw Error(ErrorCode::DimensionMismatch, "adjacency matrix is not square");
    const std::size_t n = adj.rows();
    Graph g;
    g.nbrs_.resize(n);
    for (std::size_t u = 0; u < n; ++u) {
        if (adj(u, u) != 0) throw Error(ErrorCode::InvalidSpec, "loop at vertex " + std::to_string(u));
        for (std::size_t v = 0; v < n; ++v) {
            if (adj(u, v) != 0 && adj(u, v) != 1) throw Error(ErrorCode::InvalidSpec, "adjacency entries must be 0/1");
            if (adj(u, v) != adj(v, u))
                throw Error(ErrorCode::NotSymmetric, "adjacency is not symmetric",
                            std::to_string(u) + "," + std::to_string(v));
            if (adj(u, v)) g.nbrs_[u].push_back(v);
        }
    }
    g.adj_ = std::move(adj);
    return g;
}

Graph Graph::from_edges(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& edges) {
    IntMatrix adj(n, n);
    for (auto [u, v] : edges) {
        if (u >= n || v >= n) throw Error(ErrorCode::IndexOutOfRange, "edge endpoint outside 0.." + std::to_string(n - 1));
        if (u == v) throw Error(ErrorCode::InvalidSpec, "loop at vertex " + std::to_string(u));
        adj(u, v) = adj(v, u) = 1;
    }
    return from_adjacency(std::move(adj));
}

std::vector<std::vector<std::size_t>> distances(const Graph& g) {
    const std::size_t n = g.vertex_count();
    std::vector<std::vector<std::size_t>> dist(n, std::vector<std::size_t>(n, SIZE_MAX));
    for (std::size_t s = 0; s < n; ++s) {
        auto& d = dist[s];
        std::deque<std::size_t> queue{s};
        d[s] = 0;
        while (!queue.empty()) {
            const std::size_t u = queue.front();
            queue.pop_front();
            for (auto w : g.neighbors(u))
                if (d[w] == SIZE_MAX) {
                    d[w] = d[u] + 1;
                    queue.push_back(w);
                }
        }
        for (std::size_t v = 0; v < n; ++v)
            if (d[v] == SIZE_MAX)
                throw Error(ErrorCode::Disconnected, "no path from " + std::to_string(s) + " to " + std::to_string(v),
                            std::to_string(s) + "," + std::to_string(v));
    }
    return dist;
}

std::vector<IntMatrix> distance_matrices(const Graph& g) {
    const auto dist = distances(g);
    const std::size_t n = g.vertex_count();
    std::size_t diam = 0;
    for (const auto& row : dist) diam = std::max(diam, *std::max_element(row.begin(), row.end()));
    std::vector<IntMatrix> out(diam + 1, IntMatrix(n, n));
    for (std::size_t u = 0; u < n; ++u)
        for (std::size_t v = 0; v < n; ++v) out[dist[u][v]](u, v) = 1;
    return out;
}

std::vector<std::int64_t> IntersectionArray::valencies() const {
    std::vector<std::int64_t> k{1};
    for (std::size_t i = 0; i < diameter(); ++i) {
        const std::int64_t num = checked_mul(k.back(), b[i]);
        if (num % c[i] != 0)
            throw Error(ErrorCode::NotDRG, "k_" + std::to_string(i + 1) + " is not an integer for " + to_string());
        k.push_back(num / c[i]);
    }
    return k;
}

std::string IntersectionArray::to_string() const {
    std::ostringstream os;
    os << '{';
    for (std::size_t i = 0; i < b.size(); ++i) os << (i ? "," : "") << b[i];
    os << ';';
    for (std::size_t i = 0; i < c.size(); ++i) os << (i ? "," : "") << c[i];
    os << '}';
    return os.str();
}

std::variant<IntersectionArray, NotDrgWitness> intersection_array(const Graph& g) {
    const auto dist = distances(g);
    const std::size_t n = g.vertex_count();
    std::size_t diam = 0;
    for (const auto& row : dist) diam = std::max(diam, *std::max_element(row.begin(), row.end()));

    // first[k] = (c_k, b_k) seen at the first pair with distance k.
    std::vector<std::pair<std::int64_t, std::int64_t>> first(diam + 1, {-1, -1});
    for (std::size_t u = 0; u < n; ++u)
        for (std::size_t v = 0; v < n; ++v) {
            const std::size_t k = dist[u][v];
            std::int64_t c = 0, b = 0;
            for (auto w : g.neighbors(v)) {
                if (dist[u][w] + 1 == k) ++c;
                else if (dist[u][w] == k + 1) ++b;
            }
            if (first[k].first < 0) {
                first[k] = {c, b};
            } else if (first[k] != std::pair{c, b}) {
                NotDrgWitness w{u, v, k, {}};
                w.what = "pair (" + std::to_string(u) + "," + std::to_string(v) + ") at distance " + std::to_string(k) +
                         " has c=" + std::to_string(c) + ", b=" + std::to_string(b) + " instead of c=" +
                         std::to_string(first[k].first) + ", b=" + std::to_string(first[k].second);
                return w;
            }
        }
    IntersectionArray arr;
    for (std::size_t k = 0; k < diam; ++k) arr.b.push_back(first[k].second);
    for (std::size_t k = 1; k <= diam; ++k) arr.c.push_back(first[k].first);
    return arr;
}

IntersectionArray parse_intersection_array(const std::string& text) {
    std::string s;
    for (char ch : text)
        if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
    if (s.size() < 3 || s.front() != '{' || s.back() != '}' || std::count(s.begin(), s.end(), ';') != 1)
        throw Error(ErrorCode::ParseError, "intersection array must look like {b0,b1,...;c1,c2,...}", text);
    const auto semi = s.find(';');
    auto parse_list = [&](const std::string& part) {
        std::vector<std::int64_t> out;
        std::stringstream ss(part);
        std::string tok;
        while (std::getline(ss, tok, ',')) {
            std::size_t used = 0;
            std::int64_t x = 0;
            try {
                x = std::stoll(tok, &used);
            } catch (const std::exception&) {
                used = 0;
            }
            if (used == 0 || used != tok.size()) throw Error(ErrorCode::ParseError, "bad number '" + tok + "'", text);
            out.push_back(x);
        }
        return out;
    };
    IntersectionArray arr{parse_list(s.substr(1, semi - 1)), parse_list(s.substr(semi + 1, s.size() - semi - 2))};
    if (arr.b.empty() || arr.b.size() != arr.c.size())
        throw Error(ErrorCode::InvalidSpec, "b and c lists must be nonempty and of equal length", text);
    return arr;
}

IntersectionTensor intersection_numbers(const IntersectionArray& arr) {
    const std::size_t d = arr.diameter();
    if (d == 0 || arr.c.size() != d) throw Error(ErrorCode::InvalidSpec, "malformed intersection array");
    if (arr.c[0] != 1) throw Error(ErrorCode::NotDRG, "c_1 must be 1 in " + arr.to_string());
    for (std::size_t i = 0; i <= d; ++i) {
        if (i < d && arr.b[i] <= 0) throw Error(ErrorCode::NotDRG, "b_i must be positive in " + arr.to_string());
        if (i > 0 && arr.c[i - 1] <= 0) throw Error(ErrorCode::NotDRG, "c_i must be positive in " + arr.to_string());
        if (arr.a_at(i) < 0) throw Error(ErrorCode::NotDRG, "a_" + std::to_string(i) + " < 0 in " + arr.to_string());
    }
    const auto k = arr.valencies();
    const std::int64_t n = std::accumulate(k.begin(), k.end(), std::int64_t{0});
    for (std::size_t i = 1; i <= d; ++i)
        if (checked_mul(n, k[i]) % 2 != 0)
            throw Error(ErrorCode::NotDRG, "distance-" + std::to_string(i) + " graph would have odd degree sum in " +
                                               arr.to_string());

    // L_i is multiplication by A_i in the basis A_0..A_d: column j holds the coefficients of A_i A_j.
    const std::size_t m = d + 1;
    IntMatrix l1(m, m);
    for (std::size_t j = 0; j <= d; ++j) {
        if (j > 0) l1(j - 1, j) = arr.b_at(j - 1);
        l1(j, j) = arr.a_at(j);
        if (j < d) l1(j + 1, j) = arr.c_at(j + 1);
    }
    std::vector<IntMatrix> l{IntMatrix::identity(m), l1};
    for (std::size_t i = 1; i < d; ++i) {
        IntMatrix next = l1 * l[i] - l[i].scaled(arr.a_at(i)) - l[i - 1].scaled(arr.b_at(i - 1));
        const std::int64_t c = arr.c_at(i + 1);
        for (std::size_t r = 0; r < m; ++r)
            for (std::size_t s = 0; s < m; ++s) {
                if (next(r, s) % c != 0)
                    throw Error(ErrorCode::NotDRG, "non-integral intersection number for " + arr.to_string());
                next(r, s) /= c;
            }
        l.push_back(std::move(next));
    }
    IntersectionTensor p(d);
    for (std::size_t i = 0; i <= d; ++i)
        for (std::size_t j = 0; j <= d; ++j)
            for (std::size_t k = 0; k <= d; ++k) {
                p(i, j, k) = l[i](k, j);
                if (p(i, j, k) < 0) throw Error(ErrorCode::NotDRG, "negative intersection number for " + arr.to_string());
            }
    for (std::size_t i = 0; i <= d; ++i)
        for (std::size_t j = 0; j <= d; ++j)
            for (std::size_t k = 0; k <= d; ++k)
                if (p(i, j, k) != p(j, i, k))
                    throw Error(ErrorCode::NotDRG, "intersection numbers are not symmetric for " + arr.to_string());
    return p;
}

AssociationScheme scheme_from_drg(const Graph& g) {
    auto res = intersection_array(g);
    if (auto* w = std::get_if<NotDrgWitness>(&res)) throw Error(ErrorCode::NotDRG, w->what, w->what);
    const auto& arr = std::get<IntersectionArray>(res);
    auto scheme = AssociationScheme::from_matrices(distance_matrices(g));
    if (scheme.tensor() != intersection_numbers(arr))
        throw Error(ErrorCode::InternalInconsistency, "scheme and intersection array give different p_{i,j}^k");
    return scheme;
}

PermutationGroup::PermutationGroup(std::size_t degree, std::vector<std::vector<std::size_t>> generators)
    : degree_(degree), gens_(std::move(generators)) {
    for (std::size_t i = 0; i < gens_.size(); ++i) {
        const auto& g = gens_[i];
        std::vector<bool> hit(degree, false);
        if (g.size() != degree)
            throw Error(ErrorCode::InvalidSpec, "generator " + std::to_string(i) + " has length " +
                                                    std::to_string(g.size()) + ", expected " + std::to_string(degree));
        for (auto x : g) {
            if (x >= degree || hit[x])
                throw Error(ErrorCode::InvalidSpec, "generator " + std::to_string(i) + " is not a permutation");
            hit[x] = true;
        }
    }
}

OrbitPartition orbit_partition(const PermutationGroup& group, const Graph& g) {
    const std::size_t n = g.vertex_count();
    if (group.degree() != n)
        throw Error(ErrorCode::DimensionMismatch,
                    "group of degree " + std::to_string(group.degree()) + " on a graph with " + std::to_string(n) + " vertices");
    for (std::size_t i = 0; i < group.generators().size(); ++i) {
        const auto& s = group.generators()[i];
        for (std::size_t u = 0; u < n; ++u)
            for (auto v : g.neighbors(u))
                if (!g.adjacent(s[u], s[v]))
                    throw Error(ErrorCode::NotAnAutomorphism,
                                "generator " + std::to_string(i) + " maps edge {" + std::to_string(u) + "," +
                                    std::to_string(v) + "} to a non-edge",
                                std::to_string(i) + ":" + std::to_string(u) + "," + std::to_string(v));
    }

    std::vector<std::size_t> parent(n);
    std::iota(parent.begin(), parent.end(), std::size_t{0});
    auto find = [&](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (const auto& s : group.generators())
        for (std::size_t v = 0; v < n; ++v) {
            const std::size_t a = find(v), b = find(s[v]);
            if (a != b) parent[std::max(a, b)] = std::min(a, b);
        }
    // Roots are the minimum of their orbit, so scanning v upward orders orbits by minimum.
    std::vector<std::vector<std::size_t>> cells;
    std::vector<std::size_t> cell_index(n, SIZE_MAX);
    for (std::size_t v = 0; v < n; ++v) {
        const std::size_t r = find(v);
        if (cell_index[r] == SIZE_MAX) {
            cell_index[r] = cells.size();
            cells.emplace_back();
        }
        cells[cell_index[r]].push_back(v);
    }
    OrbitPartition out{Partition::from_cells(std::move(cells), n), false};
    out.equal_lengths = out.partition.equal_cells();
    if (auto chk = verify_equitable(out.partition, distance_matrices(g)); !chk.ok)
        throw Error(ErrorCode::InternalInconsistency, "orbit partition is not equitable", *chk.witness);
    return out;
}

}  // namespace lcdsub
