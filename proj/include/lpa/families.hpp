#ifndef LPA_FAMILIES_HPP
#define LPA_FAMILIES_HPP

#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "lpa/errors.hpp"
#include "lpa/graph.hpp"

namespace lpa {

// Rose with n petals: one vertex, loops e1..en.
inline GraphPtr make_rose(int n) {
  if (n < 1) throw ValidationError("rose needs n >= 1");
  std::vector<std::tuple<std::string, std::string, std::string>> edges;
  for (int i = 1; i <= n; ++i) edges.emplace_back("e" + std::to_string(i), "v", "v");
  return DirectedGraph::create({"v"}, std::move(edges));
}

// Oriented line: v1 -> v2 -> ... -> vn via e1..e(n-1).
inline GraphPtr make_line(int n) {
  if (n < 1) throw ValidationError("line needs n >= 1");
  std::vector<std::string> vertices;
  for (int i = 1; i <= n; ++i) vertices.push_back("v" + std::to_string(i));
  std::vector<std::tuple<std::string, std::string, std::string>> edges;
  for (int i = 1; i < n; ++i)
    edges.emplace_back("e" + std::to_string(i), "v" + std::to_string(i),
                       "v" + std::to_string(i + 1));
  return DirectedGraph::create(std::move(vertices), std::move(edges));
}

// One vertex, one loop.
inline GraphPtr make_loop() { return DirectedGraph::create({"v"}, {{"x", "v", "v"}}); }

// The four-vertex example: loops f1 at v1, f3 at v3, f4 and g4 at v4; edges
// v1 -> v2, v3 -> v2, and v4 -> each of v1, v2, v3.  v2 is a sink.
inline GraphPtr make_figure4() {
  return DirectedGraph::create({"v1", "v2", "v3", "v4"},
                               {{"f1", "v1", "v1"},
                                {"e1", "v1", "v2"},
                                {"f3", "v3", "v3"},
                                {"e2", "v3", "v2"},
                                {"f4", "v4", "v4"},
                                {"g4", "v4", "v4"},
                                {"e3", "v4", "v1"},
                                {"e4", "v4", "v2"},
                                {"e5", "v4", "v3"}});
}

// Chain graph with loops: vertices v1..vn, chain edges e_i : v_{i+1} -> v_i,
// a loop f_i at every vertex, and a second loop g_i exactly when i is in S.
inline GraphPtr make_chain_with_loops(int n, const std::set<int>& s) {
  if (n < 1) throw ValidationError("chain family needs n >= 1");
  for (int i : s)
    if (i < 1 || i > n) throw ValidationError("loop set entries must lie in 1..n");
  std::vector<std::string> vertices;
  for (int i = 1; i <= n; ++i) vertices.push_back("v" + std::to_string(i));
  std::vector<std::tuple<std::string, std::string, std::string>> edges;
  for (int i = 1; i < n; ++i)
    edges.emplace_back("e" + std::to_string(i), "v" + std::to_string(i + 1),
                       "v" + std::to_string(i));
  for (int i = 1; i <= n; ++i)
    edges.emplace_back("f" + std::to_string(i), "v" + std::to_string(i),
                       "v" + std::to_string(i));
  for (int i : s)
    edges.emplace_back("g" + std::to_string(i), "v" + std::to_string(i),
                       "v" + std::to_string(i));
  return DirectedGraph::create(std::move(vertices), std::move(edges));
}

// Dispatcher used by the CLI: rose N | line N | loop | figure4 | E N [i,j,..]
inline GraphPtr make_family(const std::string& name, const std::vector<std::string>& params) {
  auto int_param = [&](std::size_t i) -> int {
    if (i >= params.size()) throw ValidationError("family '" + name + "' needs a size parameter");
    try {
      std::size_t used = 0;
      int v = std::stoi(params[i], &used);
      if (used != params[i].size()) throw std::invalid_argument("");
      return v;
    } catch (const std::exception&) {
      throw ValidationError("bad integer parameter: " + params[i]);
    }
  };
  if (name == "rose") {
    if (params.size() != 1) throw ValidationError("usage: rose <n>");
    return make_rose(int_param(0));
  }
  if (name == "line") {
    if (params.size() != 1) throw ValidationError("usage: line <n>");
    return make_line(int_param(0));
  }
  if (name == "loop") {
    if (!params.empty()) throw ValidationError("usage: loop");
    return make_loop();
  }
  if (name == "figure4") {
    if (!params.empty()) throw ValidationError("usage: figure4");
    return make_figure4();
  }
  if (name == "E") {
    if (params.empty() || params.size() > 2) throw ValidationError("usage: E <n> [i,j,...]");
    int n = int_param(0);
    std::set<int> s;
    if (params.size() == 2) {
      const std::string& list = params[1];
      std::size_t pos = 0;
      while (pos < list.size()) {
        std::size_t comma = list.find(',', pos);
        if (comma == std::string::npos) comma = list.size();
        std::string item = list.substr(pos, comma - pos);
        try {
          std::size_t used = 0;
          int v = std::stoi(item, &used);
          if (used != item.size()) throw std::invalid_argument("");
          s.insert(v);
        } catch (const std::exception&) {
          throw ValidationError("bad loop set entry: " + item);
        }
        pos = comma + 1;
      }
    }
    return make_chain_with_loops(n, s);
  }
  throw ValidationError("unknown family: " + name);
}

}  // namespace lpa

#endif
