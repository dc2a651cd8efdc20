#include "hgl/graphs.hpp"

#include <algorithm>
#include <bit>
#include <fstream>
#include <numeric>
#include <stdexcept>

namespace hgl::graphs {

size_t GraphHandle::degree(size_t u) const {
    size_t d = 0;
    for (auto w : rows[u]) d += std::popcount(w);
    return d;
}

std::uint64_t GraphHandle::num_edges() const {
    std::uint64_t twice = 0;
    for (size_t u = 0; u < size(); ++u) twice += degree(u);
    return twice / 2;
}

namespace {

GraphHandle build_matrix_graph(const Field& F, unsigned n, bool invertible_only,
                               const BuildBudget& budget, const char* family) {
    std::uint64_t count = 1;
    for (unsigned i = 0; i < n * n; ++i) count *= F.q();  // q^{n^2} hermitian matrices
    if (count > budget.max_vertices)
        throw std::runtime_error("vertex budget exceeded: build needs up to " +
                                 std::to_string(count) + " vertices");
    auto verts = mat::enumerate_hermitian(F, n, invertible_only);
    GraphHandle G(verts.size());
    G.q = F.q();
    G.n = n;
    G.family = family;
    for (const auto& A : verts) G.labels.push_back(mat::encode(F, A));
    for (size_t i = 0; i < verts.size(); ++i)
        for (size_t j = i + 1; j < verts.size(); ++j)
            if (mat::adjacent(F, verts[i], verts[j])) G.add_edge(i, j);
    return G;
}

}  // namespace

GraphHandle build_hgl(const Field& F, unsigned n, const BuildBudget& budget) {
    return build_matrix_graph(F, n, true, budget, "hgl");
}

GraphHandle build_h2(const Field& F, const BuildBudget& budget) {
    return build_matrix_graph(F, 2, false, budget, "h2");
}

GraphHandle complement(const GraphHandle& G) {
    GraphHandle C(G.size());
    C.q = G.q;
    C.n = G.n;
    C.family = G.family + ".complement";
    C.labels = G.labels;
    for (size_t u = 0; u < G.size(); ++u)
        for (size_t v = u + 1; v < G.size(); ++v)
            if (!G.adjacent(u, v)) C.add_edge(u, v);
    return C;
}

GraphHandle induced_subgraph(const GraphHandle& G, const std::vector<size_t>& keep) {
    GraphHandle H(keep.size());
    H.q = G.q;
    H.n = G.n;
    H.family = G.family + ".induced";
    for (size_t i : keep)
        if (!G.labels.empty()) H.labels.push_back(G.labels[i]);
    for (size_t a = 0; a < keep.size(); ++a)
        for (size_t b = a + 1; b < keep.size(); ++b)
            if (G.adjacent(keep[a], keep[b])) H.add_edge(a, b);
    return H;
}

bool is_connected(const GraphHandle& G) {
    if (G.size() == 0) return true;
    std::vector<bool> seen(G.size(), false);
    std::vector<size_t> stack{0};
    seen[0] = true;
    size_t found = 1;
    while (!stack.empty()) {
        size_t u = stack.back();
        stack.pop_back();
        for (size_t v = 0; v < G.size(); ++v)
            if (G.adjacent(u, v) && !seen[v]) {
                seen[v] = true;
                ++found;
                stack.push_back(v);
            }
    }
    return found == G.size();
}

std::optional<size_t> regular_degree(const GraphHandle& G) {
    if (G.size() == 0) return 0;
    size_t d = G.degree(0);
    for (size_t u = 1; u < G.size(); ++u)
        if (G.degree(u) != d) return std::nullopt;
    return d;
}

GraphHandle det_class_subgraph(const Field& F, const GraphHandle& G, Fel lambda) {
    if (lambda == 0) throw std::invalid_argument("determinant class must be nonzero");
    if (G.family != "hgl") throw std::invalid_argument("expected an hgl build");
    std::vector<size_t> keep;
    for (size_t i = 0; i < G.size(); ++i)
        if (mat::det(F, mat::decode(F, G.n, G.labels[i])) == lambda) keep.push_back(i);
    auto H = induced_subgraph(G, keep);
    H.family = "hgl.detclass";
    return H;
}

bool transitivity_witness(const Field& F, const GraphHandle& G, size_t va, size_t vb) {
    Matrix A = mat::decode(F, G.n, G.labels[va]);
    Matrix B = mat::decode(F, G.n, G.labels[vb]);
    auto ca = mat::congruence_diagonalize(F, A);
    auto cb = mat::congruence_diagonalize(F, B);
    if (ca.r != G.n || cb.r != G.n) return false;
    auto painv = mat::inverse(F, ca.P);
    if (!painv) return false;
    Matrix P = mat::mul(F, cb.P, *painv);  // P A P^* = B
    Matrix Ps = mat::conj_transpose(F, P);
    auto image = [&](size_t u) -> std::optional<size_t> {
        Matrix X = mat::decode(F, G.n, G.labels[u]);
        std::uint64_t code = mat::encode(F, mat::mul(F, mat::mul(F, P, X), Ps));
        auto it = std::lower_bound(G.labels.begin(), G.labels.end(), code);
        if (it == G.labels.end() || *it != code) return std::nullopt;
        return static_cast<size_t>(it - G.labels.begin());
    };
    auto ia = image(va);
    if (!ia || *ia != vb) return false;
    // Edge preservation across all edges incident to the orbit of va's row
    // plus a full scan: the map is linear, so checking every edge is cheap
    // only for small graphs; check all edges here (desk scale).
    for (size_t u = 0; u < G.size(); ++u) {
        auto iu = image(u);
        if (!iu) return false;
        for (size_t v = u + 1; v < G.size(); ++v)
            if (G.adjacent(u, v)) {
                auto iv = image(v);
                if (!iv || !G.adjacent(*iu, *iv)) return false;
            }
    }
    return true;
}

GraphHandle petersen() {
    std::vector<std::pair<int, int>> sets;
    for (int a = 0; a < 5; ++a)
        for (int b = a + 1; b < 5; ++b) sets.emplace_back(a, b);
    GraphHandle G(10);
    G.family = "petersen";
    for (size_t i = 0; i < 10; ++i)
        for (size_t j = i + 1; j < 10; ++j) {
            auto [a, b] = sets[i];
            auto [c, d] = sets[j];
            if (a != c && a != d && b != c && b != d) G.add_edge(i, j);
        }
    return G;
}

namespace {

bool iso_extend(const GraphHandle& A, const GraphHandle& B, std::vector<int>& map,
                std::vector<bool>& used, size_t u) {
    size_t n = A.size();
    if (u == n) return true;
    for (size_t v = 0; v < n; ++v) {
        if (used[v] || A.degree(u) != B.degree(v)) continue;
        bool ok = true;
        for (size_t w = 0; w < u; ++w)
            if (A.adjacent(u, w) != B.adjacent(v, static_cast<size_t>(map[w]))) {
                ok = false;
                break;
            }
        if (!ok) continue;
        map[u] = static_cast<int>(v);
        used[v] = true;
        if (iso_extend(A, B, map, used, u + 1)) return true;
        used[v] = false;
    }
    return false;
}

}  // namespace

bool isomorphic(const GraphHandle& A, const GraphHandle& B) {
    if (A.size() != B.size() || A.num_edges() != B.num_edges()) return false;
    std::vector<int> map(A.size(), -1);
    std::vector<bool> used(A.size(), false);
    return iso_extend(A, B, map, used, 0);
}

void write_edge_list(const GraphHandle& G, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path);
    out << "p edge " << G.size() << " " << G.num_edges() << "\n";
    for (size_t u = 0; u < G.size(); ++u)
        for (size_t v = u + 1; v < G.size(); ++v)
            if (G.adjacent(u, v)) out << u << " " << v << "\n";
}

GraphHandle read_edge_list(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::string p, edge;
    size_t nv = 0, ne = 0;
    if (!(in >> p >> edge >> nv >> ne) || p != "p" || edge != "edge")
        throw std::runtime_error("bad edge-list header in " + path);
    GraphHandle G(nv);
    G.family = "file";
    size_t u, v;
    while (in >> u >> v) {
        if (u >= nv || v >= nv) throw std::runtime_error("edge endpoint out of range");
        if (u != v) G.add_edge(u, v);
    }
    return G;
}

}  // namespace hgl::graphs
