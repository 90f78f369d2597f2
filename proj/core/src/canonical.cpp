#include "mapfpp/canonical.hpp"

namespace mapfpp {

CanonicalLabeling canonical_labeling(const RotationMap& m, bool include_marked) {
    const int V = m.vertex_count();
    const int H = m.half_edge_count();
    CanonicalLabeling out;
    out.dart_label.assign(H, -1);
    std::vector<int> entry(V, -1);
    auto& order = out.vertex_order;
    order.reserve(V);

    entry[m.root_vertex()] = m.root();
    order.push_back(m.root_vertex());
    int next_label = 0;
    for (std::size_t i = 0; i < order.size(); ++i) {
        int v = order[i];
        int g = entry[v];
        do {
            out.dart_label[g] = next_label++;
            int w = m.target(g);
            if (entry[w] < 0) {
                entry[w] = twin(g);
                order.push_back(w);
            }
            g = m.next_cw(g);
        } while (g != entry[v]);
    }

    auto& code = out.code;
    code.reserve(H + V + 3);
    code.push_back(V);
    code.push_back(H);
    for (int v : order) {
        code.push_back(m.degree(v));
        int g = entry[v];
        do {
            code.push_back(out.dart_label[twin(g)]);
            g = m.next_cw(g);
        } while (g != entry[v]);
    }
    if (include_marked) {
        int mk = -1;
        if (m.marked()) {
            for (int i = 0; i < V; ++i)
                if (order[i] == *m.marked()) mk = i;
        }
        code.push_back(mk);
    }
    return out;
}

std::vector<int> canonical_code(const RotationMap& m, bool include_marked) {
    return canonical_labeling(m, include_marked).code;
}

}  // namespace mapfpp
