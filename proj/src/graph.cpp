#include "omega/graph.hpp"
#include "omega/error.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

namespace omega {

ParseError::ParseError(const std::string& what, std::size_t line, std::size_t column)
    : Error(line == 0 ? what : [&] {
          std::ostringstream os;
          os << "line " << line << ", column " << column << ": " << what;
          return os.str();
      }()),
      line(line), column(column) {}

ValidationError::ValidationError(std::vector<std::string> diags)
    : Error([&] {
          std::ostringstream os;
          os << diags.size() << " validation diagnostic(s)";
          for (const auto& d : diags) os << "\n  " << d;
          return os.str();
      }()),
      diagnostics(std::move(diags)) {}

ConvergenceError::ConvergenceError(double residual, std::size_t iterations)
    : Error([&] {
          std::ostringstream os;
          os << "no convergence after " << iterations << " iterations (residual " << residual << ")";
          return os.str();
      }()),
      residual(residual), iterations(iterations) {}

SccResult strongly_connected_components(const Adjacency& succ) {
    constexpr std::size_t unset = std::numeric_limits<std::size_t>::max();
    const std::size_t n = succ.size();
    std::vector<std::size_t> index(n, unset), low(n, 0);
    std::vector<bool> on_stack(n, false);
    std::vector<std::size_t> stack;
    SccResult out;
    out.component.assign(n, unset);
    std::size_t counter = 0;

    struct Frame {
        std::size_t node;
        std::size_t next;
    };
    std::vector<Frame> call;

    for (std::size_t root = 0; root < n; ++root) {
        if (index[root] != unset) continue;
        call.push_back({root, 0});
        index[root] = low[root] = counter++;
        stack.push_back(root);
        on_stack[root] = true;
        while (!call.empty()) {
            auto& f = call.back();
            const std::size_t v = f.node;
            if (f.next < succ[v].size()) {
                const std::size_t w = succ[v][f.next++];
                if (index[w] == unset) {
                    index[w] = low[w] = counter++;
                    stack.push_back(w);
                    on_stack[w] = true;
                    call.push_back({w, 0});
                } else if (on_stack[w]) {
                    low[v] = std::min(low[v], index[w]);
                }
                continue;
            }
            if (low[v] == index[v]) {
                std::size_t w;
                do {
                    w = stack.back();
                    stack.pop_back();
                    on_stack[w] = false;
                    out.component[w] = out.count;
                } while (w != v);
                ++out.count;
            }
            call.pop_back();
            if (!call.empty()) {
                const std::size_t parent = call.back().node;
                low[parent] = std::min(low[parent], low[v]);
            }
        }
    }
    return out;
}

std::vector<bool> forward_reachable(const Adjacency& succ, const std::vector<std::size_t>& sources) {
    std::vector<bool> seen(succ.size(), false);
    std::vector<std::size_t> todo;
    for (auto s : sources) {
        if (!seen[s]) {
            seen[s] = true;
            todo.push_back(s);
        }
    }
    while (!todo.empty()) {
        const auto v = todo.back();
        todo.pop_back();
        for (auto w : succ[v]) {
            if (!seen[w]) {
                seen[w] = true;
                todo.push_back(w);
            }
        }
    }
    return seen;
}

std::vector<bool> backward_reachable(const Adjacency& succ, const std::vector<bool>& targets) {
    Adjacency pred(succ.size());
    for (std::size_t v = 0; v < succ.size(); ++v)
        for (auto w : succ[v]) pred[w].push_back(v);
    std::vector<std::size_t> sources;
    for (std::size_t v = 0; v < targets.size(); ++v)
        if (targets[v]) sources.push_back(v);
    return forward_reachable(pred, sources);
}

}  // namespace omega
