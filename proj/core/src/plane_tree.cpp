#include "mapfpp/plane_tree.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "mapfpp/errors.hpp"

namespace mapfpp {

PlaneTree::PlaneTree() : parent_{-1}, first_child_{-1}, next_sibling_{-1} { finish(); }

PlaneTree PlaneTree::from_children(const std::vector<std::vector<int>>& children, int root) {
    const int n = static_cast<int>(children.size());
    if (root < 0 || root >= n) throw std::invalid_argument("root out of range");
    PlaneTree t;
    t.parent_.assign(n, -1);
    t.first_child_.assign(n, -1);
    t.next_sibling_.assign(n, -1);
    std::vector<int> id(n, -1);
    // iterative preorder
    std::vector<std::pair<int, int>> stack{{root, -1}};
    int next_id = 0;
    std::vector<int> last_child(n, -1);
    while (!stack.empty()) {
        auto [v, p] = stack.back();
        stack.pop_back();
        if (v < 0 || v >= n || id[v] >= 0) throw std::invalid_argument("children lists do not form a tree");
        int me = next_id++;
        id[v] = me;
        t.parent_[me] = p;
        if (p >= 0) {
            if (last_child[p] < 0)
                t.first_child_[p] = me;
            else
                t.next_sibling_[last_child[p]] = me;
            last_child[p] = me;
        }
        const auto& c = children[v];
        for (auto it = c.rbegin(); it != c.rend(); ++it) stack.emplace_back(*it, me);
    }
    if (next_id != n) throw std::invalid_argument("children lists do not form a tree");
    t.finish();
    return t;
}

PlaneTree PlaneTree::from_dyck(std::string_view word) {
    PlaneTree t;
    t.parent_ = {-1};
    t.first_child_ = {-1};
    t.next_sibling_ = {-1};
    std::vector<int> last_child{-1};
    int cur = 0;
    for (char c : word) {
        if (c == '(') {
            int me = static_cast<int>(t.parent_.size());
            t.parent_.push_back(cur);
            t.first_child_.push_back(-1);
            t.next_sibling_.push_back(-1);
            last_child.push_back(-1);
            if (last_child[cur] < 0)
                t.first_child_[cur] = me;
            else
                t.next_sibling_[last_child[cur]] = me;
            last_child[cur] = me;
            cur = me;
        } else if (c == ')') {
            if (cur == 0) throw std::invalid_argument("unbalanced dyck word");
            cur = t.parent_[cur];
        } else if (c != ' ' && c != '\n') {
            throw std::invalid_argument("dyck word may contain only '(' and ')'");
        }
    }
    if (cur != 0) throw std::invalid_argument("unbalanced dyck word");
    t.finish();
    return t;
}

std::string PlaneTree::to_dyck() const {
    auto c = contour();
    std::string s;
    s.reserve(c.size());
    for (std::size_t k = 1; k < c.size(); ++k) s.push_back(depth_[c[k]] > depth_[c[k - 1]] ? '(' : ')');
    return s;
}

void PlaneTree::finish() {
    const int n = vertex_count();
    depth_.assign(n, 0);
    child_count_.assign(n, 0);
    subtree_size_.assign(n, 1);
    for (int v = 1; v < n; ++v) {
        if (parent_[v] < 0 || parent_[v] >= v) throw std::invalid_argument("tree not in preorder");
        depth_[v] = depth_[parent_[v]] + 1;
        ++child_count_[parent_[v]];
    }
    for (int v = n - 1; v > 0; --v) subtree_size_[parent_[v]] += subtree_size_[v];
}

std::vector<int> PlaneTree::children(int v) const {
    std::vector<int> out;
    for (int c = first_child_[v]; c >= 0; c = next_sibling_[c]) out.push_back(c);
    return out;
}

int PlaneTree::height() const { return *std::max_element(depth_.begin(), depth_.end()); }

int PlaneTree::ancestor(int v, int h) const {
    if (h < 0 || h > depth_[v]) throw HeightExceedsDepth("generation exceeds depth of the vertex");
    while (depth_[v] > h) v = parent_[v];
    return v;
}

std::vector<int> PlaneTree::contour() const {
    std::vector<int> c;
    c.reserve(2 * vertex_count() - 1);
    c.push_back(0);
    int v = 0;
    int came_from = -1;  // child we returned from
    while (true) {
        int next = came_from < 0 ? first_child_[v] : next_sibling_[came_from];
        if (next >= 0) {
            v = next;
            came_from = -1;
        } else {
            if (v == 0) break;
            came_from = v;
            v = parent_[v];
        }
        c.push_back(v);
    }
    return c;
}

void LabeledPlaneTree::validate() const {
    if (static_cast<int>(label.size()) != tree.vertex_count()) throw std::invalid_argument("label count mismatch");
    if (label[0] != 0) throw std::invalid_argument("root label must be 0");
    for (int v = 1; v < tree.vertex_count(); ++v) {
        auto d = label[v] - label[tree.parent(v)];
        if (d < -1 || d > 1) throw std::invalid_argument("adjacent labels differ by more than 1");
    }
}

std::int64_t LabeledPlaneTree::min_label() const { return *std::min_element(label.begin(), label.end()); }

std::string LabeledPlaneTree::to_text() const {
    std::ostringstream os;
    os << tree.to_dyck() << '\n';
    for (std::size_t v = 0; v < label.size(); ++v) os << (v ? " " : "") << label[v];
    os << '\n';
    return os.str();
}

LabeledPlaneTree LabeledPlaneTree::from_text(std::string_view text) {
    std::istringstream is{std::string(text)};
    std::string word, line;
    std::getline(is, word);
    LabeledPlaneTree t{PlaneTree::from_dyck(word), {}};
    if (std::getline(is, line)) {
        std::istringstream ls(line);
        std::int64_t z;
        while (ls >> z) t.label.push_back(z);
    }
    if (t.label.empty()) t.label.assign(t.tree.vertex_count(), 0);
    t.validate();
    return t;
}

PlaneTree sample_uniform_tree(int n, Rng& rng) {
    if (n < 1) throw std::invalid_argument("tree needs at least one edge");
    // n up-steps, n+1 down-steps; the rotation after the first minimum is a
    // Dyck path followed by one final down-step
    std::vector<signed char> s(2 * n + 1, -1);
    std::fill(s.begin(), s.begin() + n, 1);
    std::shuffle(s.begin(), s.end(), rng);
    int h = 0, best = 1, arg = 0;
    for (int i = 0; i < 2 * n + 1; ++i) {
        h += s[i];
        if (h < best) {
            best = h;
            arg = i;
        }
    }
    std::string word;
    word.reserve(2 * n);
    for (int k = 1; k <= 2 * n; ++k) word.push_back(s[(arg + k) % (2 * n + 1)] > 0 ? '(' : ')');
    return PlaneTree::from_dyck(word);
}

LabeledPlaneTree assign_labels(const PlaneTree& t, Rng& rng) {
    LabeledPlaneTree out{t, std::vector<std::int64_t>(t.vertex_count(), 0)};
    for (int v = 1; v < t.vertex_count(); ++v)
        out.label[v] = out.label[t.parent(v)] + static_cast<std::int64_t>(rng() % 3) - 1;
    return out;
}

ContourSnake contour_snake(const LabeledPlaneTree& t) {
    ContourSnake cs;
    cs.vertex = t.tree.contour();
    cs.height.reserve(cs.vertex.size());
    cs.head.reserve(cs.vertex.size());
    for (int v : cs.vertex) {
        cs.height.push_back(t.tree.depth(v));
        cs.head.push_back(t.label[v]);
    }
    return cs;
}

std::vector<std::int64_t> ContourSnake::path(const LabeledPlaneTree& t, int k) const {
    std::vector<std::int64_t> w;
    for (int v = vertex.at(k); v >= 0; v = t.tree.parent(v)) w.push_back(t.label[v]);
    std::reverse(w.begin(), w.end());
    return w;
}

PlaneTree tree_from_contour(const std::vector<int>& height) {
    if (height.empty() || height.front() != 0 || height.back() != 0)
        throw std::invalid_argument("contour must start and end at 0");
    std::string word;
    for (std::size_t k = 1; k < height.size(); ++k) {
        int d = height[k] - height[k - 1];
        if (d == 1)
            word.push_back('(');
        else if (d == -1)
            word.push_back(')');
        else
            throw std::invalid_argument("contour steps must be +-1");
    }
    return PlaneTree::from_dyck(word);
}

PrunedTree prune(const PlaneTree& t, int v, int h) {
    if (v < 0 || v >= t.vertex_count()) throw std::out_of_range("vertex out of range");
    if (h < 0 || h > t.depth(v)) throw HeightExceedsDepth("prune generation exceeds depth");
    const int a = t.ancestor(v, h);
    // preorder: strict descendants of a are a+1 .. a+size-1
    const int lo = a + 1, hi = a + t.subtree_size(a);
    PrunedTree out;
    out.old_to_new.assign(t.vertex_count(), -1);
    std::vector<std::vector<int>> children;
    int next = 0;
    for (int u = 0; u < t.vertex_count(); ++u)
        if (u < lo || u >= hi) out.old_to_new[u] = next++;
    children.resize(next);
    for (int u = 1; u < t.vertex_count(); ++u)
        if (out.old_to_new[u] >= 0) children[out.old_to_new[t.parent(u)]].push_back(out.old_to_new[u]);
    out.tree = PlaneTree::from_children(children, 0);
    out.point = out.old_to_new[a];
    out.removed = hi - lo;
    return out;
}

PrunedTree prune(const LabeledPlaneTree& t, int v, int h) {
    auto out = prune(t.tree, v, h);
    std::vector<std::int64_t> z(out.tree.vertex_count());
    for (int u = 0; u < t.tree.vertex_count(); ++u)
        if (out.old_to_new[u] >= 0) z[out.old_to_new[u]] = t.label[u];
    out.label = std::move(z);
    return out;
}

}  // namespace mapfpp
