#include "pctlab/checker.hpp"

#include "pctlab/errors.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <deque>

namespace pctlab {

namespace {

bool compare(Cmp cmp, const Rat& value, const Rat& bound) {
    switch (cmp) {
    case Cmp::Ge:
        return value >= bound;
    case Cmp::Gt:
        return value > bound;
    case Cmp::Le:
        return value <= bound;
    case Cmp::Lt:
        return value < bound;
    case Cmp::Eq:
        return value == bound;
    }
    return false;
}

std::size_t numerator_bits(const Rat& value) {
    const BigInt num = boost::multiprecision::abs(boost::multiprecision::numerator(value));
    return num == 0 ? 0 : boost::multiprecision::msb(num) + 1;
}

} // namespace

Checker::Checker(const MarkovChain& mc) : mc_(mc) {}

const std::vector<char>& Checker::sat(const FormulaPtr& f) {
    auto it = memo_.find(f.get());
    if (it != memo_.end()) {
        return it->second;
    }
    std::vector<char> mask = eval(f);
    return memo_.emplace(f.get(), std::move(mask)).first->second;
}

bool Checker::holds(const FormulaPtr& f, int state) {
    if (state < 0 || state >= mc_.state_count()) {
        throw InputError("state index out of range");
    }
    return sat(f)[static_cast<std::size_t>(state)] != 0;
}

std::vector<Rat> Checker::next_probabilities(const std::vector<char>& target) const {
    const auto n = static_cast<std::size_t>(mc_.state_count());
    std::vector<Rat> probs(n, Rat(0));
    for (std::size_t s = 0; s < n; ++s) {
        for (const auto& [to, p] : mc_.state(static_cast<int>(s)).trans) {
            if (target[static_cast<std::size_t>(to)]) {
                probs[s] += p;
            }
        }
    }
    return probs;
}

std::vector<Rat> Checker::bounded_until_probabilities(const std::vector<char>& a,
                                                      const std::vector<char>& b,
                                                      long k) const {
    const auto n = static_cast<std::size_t>(mc_.state_count());
    std::vector<Rat> probs(n, Rat(0));
    for (std::size_t s = 0; s < n; ++s) {
        if (b[s]) {
            probs[s] = 1;
        }
    }
    for (long step = 0; step < k; ++step) {
        std::vector<Rat> nextp(n, Rat(0));
        for (std::size_t s = 0; s < n; ++s) {
            if (b[s]) {
                nextp[s] = 1;
            } else if (a[s]) {
                Rat sum = 0;
                for (const auto& [to, p] : mc_.state(static_cast<int>(s)).trans) {
                    sum += p * probs[static_cast<std::size_t>(to)];
                }
                nextp[s] = std::move(sum);
            }
        }
        probs = std::move(nextp);
    }
    return probs;
}

std::vector<char> Checker::reachable_through(const std::vector<char>& a,
                                             const std::vector<char>& b) const {
    const auto n = static_cast<std::size_t>(mc_.state_count());
    std::vector<std::vector<int>> preds(n);
    for (std::size_t s = 0; s < n; ++s) {
        for (const auto& [to, p] : mc_.state(static_cast<int>(s)).trans) {
            preds[static_cast<std::size_t>(to)].push_back(static_cast<int>(s));
        }
    }
    std::vector<char> reach(n, 0);
    std::deque<int> queue;
    for (std::size_t s = 0; s < n; ++s) {
        if (b[s]) {
            reach[s] = 1;
            queue.push_back(static_cast<int>(s));
        }
    }
    while (!queue.empty()) {
        const int v = queue.front();
        queue.pop_front();
        for (int u : preds[static_cast<std::size_t>(v)]) {
            const auto ui = static_cast<std::size_t>(u);
            if (!reach[ui] && a[ui]) {
                reach[ui] = 1;
                queue.push_back(u);
            }
        }
    }
    return reach;
}

std::vector<Rat> Checker::until_probabilities(const std::vector<char>& a,
                                              const std::vector<char>& b) const {
    const auto n = static_cast<std::size_t>(mc_.state_count());
    const std::vector<char> reach = reachable_through(a, b);

    std::vector<int> maybe_index(n, -1);
    std::vector<int> maybe_states;
    for (std::size_t s = 0; s < n; ++s) {
        if (reach[s] && !b[s]) {
            maybe_index[s] = static_cast<int>(maybe_states.size());
            maybe_states.push_back(static_cast<int>(s));
        }
    }
    const std::size_t m = maybe_states.size();

    std::vector<Rat> probs(n, Rat(0));
    for (std::size_t s = 0; s < n; ++s) {
        if (b[s]) {
            probs[s] = 1;
        }
    }
    if (m == 0) {
        return probs;
    }

    // Row layout: coefficients of the unknowns, then the constant column.
    std::vector<std::vector<Rat>> rows(m, std::vector<Rat>(m + 1, Rat(0)));
    for (std::size_t r = 0; r < m; ++r) {
        const int s = maybe_states[r];
        rows[r][r] = 1;
        for (const auto& [to, p] : mc_.state(s).trans) {
            const auto ti = static_cast<std::size_t>(to);
            if (b[ti]) {
                rows[r][m] += p;
            } else if (maybe_index[ti] >= 0) {
                rows[r][static_cast<std::size_t>(maybe_index[ti])] -= p;
            }
        }
    }

    for (std::size_t col = 0; col < m; ++col) {
        std::size_t pivot = m;
        std::size_t pivot_bits = 0;
        for (std::size_t r = col; r < m; ++r) {
            if (rows[r][col] == 0) {
                continue;
            }
            const std::size_t bits = numerator_bits(rows[r][col]);
            if (pivot == m || bits < pivot_bits) {
                pivot = r;
                pivot_bits = bits;
            }
        }
        if (pivot == m) {
            throw InvariantError("until system is singular");
        }
        if (pivot != col) {
            std::swap(rows[pivot], rows[col]);
        }
        const Rat lead = rows[col][col];
        for (std::size_t c = col; c <= m; ++c) {
            rows[col][c] /= lead;
        }
        for (std::size_t r = col + 1; r < m; ++r) {
            if (rows[r][col] == 0) {
                continue;
            }
            const Rat factor = rows[r][col];
            for (std::size_t c = col; c <= m; ++c) {
                rows[r][c] -= factor * rows[col][c];
            }
        }
    }
    std::vector<Rat> solution(m, Rat(0));
    for (std::size_t r = m; r-- > 0;) {
        Rat value = rows[r][m];
        for (std::size_t c = r + 1; c < m; ++c) {
            value -= rows[r][c] * solution[c];
        }
        solution[r] = std::move(value);
    }
    for (std::size_t r = 0; r < m; ++r) {
        probs[static_cast<std::size_t>(maybe_states[r])] = solution[r];
    }
    return probs;
}

std::vector<char> Checker::eval(const FormulaPtr& f) {
    const auto n = static_cast<std::size_t>(mc_.state_count());
    std::vector<char> mask(n, 0);
    switch (f->kind) {
    case StateKind::True:
        std::fill(mask.begin(), mask.end(), 1);
        break;
    case StateKind::False:
        break;
    case StateKind::Atom:
        for (std::size_t s = 0; s < n; ++s) {
            mask[s] = mc_.has_prop(static_cast<int>(s), f->name) ? 1 : 0;
        }
        break;
    case StateKind::Not: {
        const auto& inner = sat(f->a);
        for (std::size_t s = 0; s < n; ++s) {
            mask[s] = inner[s] ? 0 : 1;
        }
        break;
    }
    case StateKind::And: {
        const auto& l = sat(f->a);
        const auto& r = sat(f->b);
        for (std::size_t s = 0; s < n; ++s) {
            mask[s] = (l[s] && r[s]) ? 1 : 0;
        }
        break;
    }
    case StateKind::Or: {
        const auto& l = sat(f->a);
        const auto& r = sat(f->b);
        for (std::size_t s = 0; s < n; ++s) {
            mask[s] = (l[s] || r[s]) ? 1 : 0;
        }
        break;
    }
    case StateKind::Implies: {
        const auto& l = sat(f->a);
        const auto& r = sat(f->b);
        for (std::size_t s = 0; s < n; ++s) {
            mask[s] = (!l[s] || r[s]) ? 1 : 0;
        }
        break;
    }
    case StateKind::ExactMatch: {
        std::vector<std::vector<char>> key(n);
        for (std::size_t s = 0; s < n; ++s) {
            std::vector<char> bits(f->props.size(), 0);
            for (std::size_t i = 0; i < f->props.size(); ++i) {
                bits[i] = mc_.has_prop(static_cast<int>(s), f->props[i]) ? 1 : 0;
            }
            key[s] = std::move(bits);
        }
        for (std::size_t s = 0; s < n; ++s) {
            mask[s] = 1;
            for (const auto& [to, p] : mc_.state(static_cast<int>(s)).trans) {
                if (key[static_cast<std::size_t>(to)] != key[s]) {
                    mask[s] = 0;
                    break;
                }
            }
        }
        break;
    }
    case StateKind::Prob:
        mask = eval_prob(*f);
        break;
    }
    return mask;
}

std::vector<char> Checker::eval_prob(const StateFormula& f) {
    const auto n = static_cast<std::size_t>(mc_.state_count());
    const PathFormula& path = *f.path;
    std::vector<char> mask(n, 0);

    if (path.kind == PathKind::Next) {
        const std::vector<Rat> probs = next_probabilities(sat(path.right));
        for (std::size_t s = 0; s < n; ++s) {
            mask[s] = compare(f.cmp, probs[s], f.bound) ? 1 : 0;
        }
        return mask;
    }

    const std::vector<char>& a = sat(path.left);
    const std::vector<char>& b = sat(path.right);

    if (path.kind == PathKind::Until && f.bound == 0) {
        // Qualitative cases: the until probability is positive exactly on
        // the states that can reach b through a.
        switch (f.cmp) {
        case Cmp::Ge:
            std::fill(mask.begin(), mask.end(), 1);
            return mask;
        case Cmp::Lt:
            return mask;
        case Cmp::Gt:
            return reachable_through(a, b);
        case Cmp::Le:
        case Cmp::Eq: {
            const std::vector<char> reach = reachable_through(a, b);
            for (std::size_t s = 0; s < n; ++s) {
                mask[s] = reach[s] ? 0 : 1;
            }
            return mask;
        }
        }
    }

    const std::vector<Rat> probs = path.kind == PathKind::Until
                                       ? until_probabilities(a, b)
                                       : bounded_until_probabilities(a, b, path.step_bound);
    for (std::size_t s = 0; s < n; ++s) {
        mask[s] = compare(f.cmp, probs[s], f.bound) ? 1 : 0;
    }
    return mask;
}

std::vector<char> sat_states(const MarkovChain& mc, const FormulaPtr& f) {
    Checker checker(mc);
    return checker.sat(f);
}

bool check_state(const MarkovChain& mc, const FormulaPtr& f, int state) {
    Checker checker(mc);
    return checker.holds(f, state);
}

} // namespace pctlab
