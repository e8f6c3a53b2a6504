#include "pctlab/witness.hpp"

#include "pctlab/errors.hpp"

#include <algorithm>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace pctlab {

namespace {

std::string reg_name(long long phase) {
    return "r" + std::to_string(((phase % 5) + 5) % 5);
}

int display_rank(const std::string& p) {
    if (p == "h") return 0;
    if (p == "a" || p == "b" || p == "c") return 1;
    if (!p.empty() && p[0] == 'r') return 2;
    if (!p.empty() && p[0] == 'l') return 3;
    if (p == "d") return 4;
    return 5;
}

/// Joins propositions in display order: h, then the shape letter, then
/// the register, then the label, then d, then e.
std::string props_key(std::vector<std::string> props) {
    std::sort(props.begin(), props.end(), [](const std::string& x, const std::string& y) {
        int rx = display_rank(x);
        int ry = display_rank(y);
        return rx != ry ? rx < ry : x < y;
    });
    std::string out;
    for (std::size_t i = 0; i < props.size(); ++i) {
        if (i > 0)
            out += ',';
        out += props[i];
    }
    return out;
}

bool has_prop(const std::vector<std::string>& props, const std::string& p) {
    return std::find(props.begin(), props.end(), p) != props.end();
}

long long reg_phase(const std::vector<std::string>& props) {
    for (const auto& p : props)
        if (p.size() == 2 && p[0] == 'r' && p[1] >= '0' && p[1] <= '4')
            return p[1] - '0';
    throw InvariantError("state propositions carry no register");
}

/// One side's target description: its propositions and remaining count.
/// Frozen states (those carrying h) have no live count; they use -1.
struct Shape {
    std::vector<std::string> props;
    long long counter = -1;

    bool frozen() const { return counter < 0; }
};

Shape frozen_shape(std::vector<std::string> props) { return {std::move(props), -1}; }

/// One outgoing row of a single side: where that side's mass goes.
struct Row {
    Shape target;
    Rat mass;
};

/// The four rows of a spine step for one side, in a, b, e, c order. The
/// labeled continuation is the a row after a decrement and the b row
/// otherwise; the plain c row is the slack row that absorbs the rest.
struct SpineStep {
    Row a_row;
    Row b_row;
    Row e_row;
    Row c_row;
    bool continue_on_a = false;

    const Row& continuation() const { return continue_on_a ? a_row : b_row; }
};

/// Rows for one side of a spine state with register phase i and count n,
/// executing an increment (is_inc) or a test-and-decrement, and handing
/// the run's label off to next_label.
SpineStep spine_step(const GeometryConstants& g, long long i, long long n, bool is_inc,
                     int next_label) {
    const Rat one(1);
    Vec2 sk = iterate(g, OrbitMap::Sigma, g.kappa(), static_cast<unsigned>(n));
    std::string s1 = reg_name(i + 1);
    std::string s2 = reg_name(i + 2);
    std::string lab = "l" + std::to_string(next_label);

    SpineStep step;
    if (!is_inc && n > 0) {
        // Decrement: the run continues on the a shape one count lower.
        step.continue_on_a = true;
        step.a_row = {Shape{{"a", s1, lab}, n - 1}, sk.x1};
        step.b_row = {frozen_shape({"h", "b", s2}), sk.x2};
        step.e_row = {frozen_shape({"h", "c", s2, "e"}), one - g.q()};
        step.c_row = {frozen_shape({"h", "c", s2}), g.q() - sk.x1 - sk.x2};
    } else if (!is_inc) {
        // Zero test: the count stays at zero and the run continues on b.
        step.a_row = {frozen_shape({"h", "a", s1}), sk.x1};
        step.b_row = {Shape{{"b", s2, lab}, 0}, sk.x2};
        step.e_row = {frozen_shape({"h", "c", s2, "e"}), one - g.q()};
        step.c_row = {frozen_shape({"h", "c", s2}), g.q() - sk.x1 - sk.x2};
    } else {
        // Increment: the run continues on b one count higher, and the
        // c rows stay live so the raised count can be probed later.
        step.a_row = {n == 0 ? frozen_shape({"h", "a", s1}) : Shape{{"a", s1}, n - 1}, sk.x1};
        step.b_row = {Shape{{"b", s2, lab}, n + 1}, sk.x2};
        step.e_row = {Shape{{"c", s2, "e"}, n + 1}, one - g.q()};
        step.c_row = {Shape{{"c", s2}, n + 1}, g.q() - sk.x1 - sk.x2};
    }
    return step;
}

/// Rows of a live off-spine state: an a shape counts down toward a
/// frozen fan, a c shape counts down once and feeds the d companion.
/// The last row returned is always the plain c slack row.
std::vector<Row> live_rows(const GeometryConstants& g, const Shape& s) {
    const Rat one(1);
    long long i = reg_phase(s.props);
    long long n = s.counter;
    Vec2 sk = iterate(g, OrbitMap::Sigma, g.kappa(), static_cast<unsigned>(n));
    std::string s1 = reg_name(i + 1);
    std::string s2 = reg_name(i + 2);

    std::vector<Row> rows;
    if (has_prop(s.props, "a")) {
        if (n == 0)
            rows.push_back({frozen_shape({"h", "a", s1}), sk.x1});
        else
            rows.push_back({Shape{{"a", s1}, n - 1}, sk.x1});
        rows.push_back({frozen_shape({"h", "b", s2}), sk.x2});
        rows.push_back({frozen_shape({"h", "c", s2}), one - sk.x1 - sk.x2});
    } else if (has_prop(s.props, "c")) {
        if (n < 1)
            throw InvariantError("live c state requires a positive count");
        Rat p = d_mass(g, n);
        rows.push_back({Shape{{"a", s1}, n - 1}, sk.x1});
        rows.push_back({frozen_shape({"h", "b", s2}), sk.x2});
        rows.push_back({frozen_shape({"h", "c", s2, "d"}), p});
        rows.push_back({frozen_shape({"h", "c", s2}), one - sk.x1 - sk.x2 - p});
    } else {
        throw InvariantError("live state must carry the a or c shape");
    }
    return rows;
}

/// Shared spine bookkeeping: the unrolled length and, per step, each
/// side's register phase and shape letter.
struct SpineLayout {
    int alpha = 0;
    int spine_length = 0;
    // Indexed by side, then by step 0..spine_length.
    std::vector<std::vector<long long>> phase;
    std::vector<std::vector<char>> shape;
};

/// Lays out the spine for a periodic computation whose side s counter
/// is counters[s]. The cycle is unrolled five times unless every side's
/// register rotation already closes after one pass.
SpineLayout lay_out_spine(const Computation& comp, int sides) {
    int alpha = comp.period->first;
    int beta = comp.period->second;
    int cycle = beta - alpha;

    auto advance = [&](int side, std::size_t k) {
        long long before = comp.config_at(k).counters[static_cast<std::size_t>(side)];
        long long after = comp.config_at(k + 1).counters[static_cast<std::size_t>(side)];
        return after == before - 1 ? 1 : 2;
    };

    bool closes = true;
    for (int side = 0; side < sides; ++side) {
        long long delta = 0;
        for (int k = alpha - 1; k < beta - 1; ++k)
            delta += advance(side, static_cast<std::size_t>(k));
        if (delta % 5 != 0)
            closes = false;
    }
    int unroll = closes ? 1 : 5;

    SpineLayout layout;
    layout.alpha = alpha;
    layout.spine_length = alpha + unroll * cycle;
    layout.phase.assign(static_cast<std::size_t>(sides), {});
    layout.shape.assign(static_cast<std::size_t>(sides), {});
    for (int side = 0; side < sides; ++side) {
        auto& ph = layout.phase[static_cast<std::size_t>(side)];
        auto& sh = layout.shape[static_cast<std::size_t>(side)];
        ph.assign(static_cast<std::size_t>(layout.spine_length) + 1, 0);
        sh.assign(static_cast<std::size_t>(layout.spine_length) + 1, 'a');
        for (int k = 0; k < layout.spine_length; ++k) {
            int adv = advance(side, static_cast<std::size_t>(k));
            ph[static_cast<std::size_t>(k) + 1] = ph[static_cast<std::size_t>(k)] + adv;
            sh[static_cast<std::size_t>(k) + 1] = adv == 1 ? 'a' : 'b';
        }
        std::size_t wrap = static_cast<std::size_t>(layout.spine_length);
        std::size_t back = static_cast<std::size_t>(alpha);
        if ((ph[wrap] - ph[back]) % 5 != 0 || sh[wrap] != sh[back])
            throw InvariantError("period does not close the register rotation");
    }
    return layout;
}

void require_periodic(const Computation& comp) {
    if (comp.prefix.empty())
        throw InputError("computation is empty");
    if (!comp.periodic())
        throw InputError("computation has no period; only a periodic run yields a finite model");
}

bool config_in(const std::vector<Configuration>& options, const Configuration& c) {
    return std::find(options.begin(), options.end(), c) != options.end();
}

/// Builds all off-spine states of a single-side model, memoized by
/// their identity string. Frozen states self-loop with mass one.
class SideStates {
public:
    SideStates(const GeometryConstants& g, MarkovChain& mc) : g_(g), mc_(mc) {}

    int state_for(const Shape& s) {
        std::string id = "[*|" + props_key(s.props) + "|" +
                         (s.frozen() ? "*" : std::to_string(s.counter)) + "]";
        auto it = memo_.find(id);
        if (it != memo_.end())
            return it->second;
        int idx = mc_.add_state(id, s.props);
        memo_.emplace(id, idx);
        if (s.frozen()) {
            mc_.add_transition(idx, idx, Rat(1));
        } else {
            for (const Row& r : live_rows(g_, s))
                mc_.add_transition(idx, state_for(r.target), r.mass);
        }
        return idx;
    }

private:
    const GeometryConstants& g_;
    MarkovChain& mc_;
    std::map<std::string, int> memo_;
};

std::string spine_id(int k, const std::string& props, long long n) {
    return "[" + std::to_string(k) + "|" + props + "|" + std::to_string(n) + "]";
}

} // namespace

Rat d_mass(const GeometryConstants& g, long long n) {
    if (n < 1)
        throw InputError("d mass requires a count of at least 1");
    Vec2 prev = iterate(g, OrbitMap::Sigma, g.kappa(), static_cast<unsigned>(n - 1));
    Vec2 cur = iterate(g, OrbitMap::Sigma, prev, 1);
    Rat p = (g.gamma() - (Rat(1) - g.q()) * prev.x2) / (Rat(1) - prev.x1 - prev.x2);
    if (!(p > 0 && p < Rat(1) - cur.x1 - cur.x2))
        throw InvariantError("d mass out of range at count " + std::to_string(n));
    return p;
}

MarkovChain model_counting(const GeometryConstants& g, int n) {
    if (n < 0)
        throw InputError("counting parameter must be nonnegative");

    MarkovChain mc;
    auto t_id = [](int i) { return "t" + std::to_string(i); };
    auto t_reg = [&](int i) { return reg_name(n - i); };

    for (int i = n; i >= 0; --i)
        mc.add_state(t_id(i), {"a", t_reg(i)});
    for (int i = n; i >= 1; --i) {
        Vec2 sk = iterate(g, OrbitMap::Sigma, g.kappa(), static_cast<unsigned>(i));
        std::string s2 = reg_name(n - i + 2);
        int b = mc.add_state("b" + std::to_string(i - 1), {"h", "b", s2});
        int c = mc.add_state("c" + std::to_string(i - 1), {"h", "c", s2});
        mc.add_transition(t_id(i), t_id(i - 1), sk.x1);
        mc.add_transition(mc.index_of(t_id(i)), b, sk.x2);
        mc.add_transition(mc.index_of(t_id(i)), c, Rat(1) - sk.x1 - sk.x2);
        mc.add_transition(b, b, Rat(1));
        mc.add_transition(c, c, Rat(1));
    }
    int fa = mc.add_state("fa", {"h", "a", reg_name(n + 1)});
    int fb = mc.add_state("fb", {"h", "b", reg_name(n + 2)});
    int fc = mc.add_state("fc", {"h", "c", reg_name(n + 2)});
    mc.add_transition(t_id(0), "fa", g.kappa().x1);
    mc.add_transition(mc.index_of(t_id(0)), fb, g.kappa().x2);
    mc.add_transition(mc.index_of(t_id(0)), fc, Rat(1) - g.kappa().x1 - g.kappa().x2);
    mc.add_transition(fa, fa, Rat(1));
    mc.add_transition(fb, fb, Rat(1));
    mc.add_transition(fc, fc, Rat(1));

    mc.set_start(t_id(n));
    mc.validate();
    return mc;
}

MarkovChain model_machine(const GeometryConstants& g, const Machine& m,
                          const Computation& comp) {
    ValidationReport report = validate_machine(m);
    if (!report.ok())
        throw InputError("machine invalid: " + report.violations.front());
    if (m.counters != 1)
        throw InputError("machine model expects a single counter");
    require_periodic(comp);
    if (comp.config_at(0).counters.size() != 1)
        throw InputError("computation counters do not match the machine");
    int beta = comp.period->second;
    for (int k = 0; k < beta; ++k) {
        std::size_t step = static_cast<std::size_t>(k);
        if (!config_in(successors(m, comp.config_at(step)), comp.config_at(step + 1)))
            throw InputError("computation does not follow the machine at step " +
                             std::to_string(k));
    }

    SpineLayout layout = lay_out_spine(comp, 1);
    MarkovChain mc;

    auto spine_props = [&](int k) {
        std::size_t i = static_cast<std::size_t>(k);
        const Configuration& c = comp.config_at(i);
        return std::vector<std::string>{std::string(1, layout.shape[0][i]),
                                        reg_name(layout.phase[0][i]),
                                        "l" + std::to_string(c.label)};
    };
    std::vector<int> spine(static_cast<std::size_t>(layout.spine_length));
    for (int k = 0; k < layout.spine_length; ++k) {
        std::size_t i = static_cast<std::size_t>(k);
        spine[i] = mc.add_state(
            spine_id(k, props_key(spine_props(k)), comp.config_at(i).counters[0]),
            spine_props(k));
    }

    SideStates side(g, mc);
    for (int k = 0; k < layout.spine_length; ++k) {
        std::size_t i = static_cast<std::size_t>(k);
        const Configuration& cur = comp.config_at(i);
        const Configuration& nxt = comp.config_at(i + 1);
        int kp = k + 1 == layout.spine_length ? layout.alpha : k + 1;
        const Instruction& ins = m.at_label(cur.label);
        SpineStep step = spine_step(g, layout.phase[0][i], cur.counters[0],
                                    ins.kind == Instruction::Kind::Inc, nxt.label);

        auto emit = [&](const Row& r, bool continuation) {
            if (continuation)
                mc.add_transition(spine[i], spine[static_cast<std::size_t>(kp)], r.mass);
            else
                mc.add_transition(spine[i], side.state_for(r.target), r.mass);
        };
        emit(step.a_row, step.continue_on_a);
        emit(step.b_row, !step.continue_on_a);
        emit(step.e_row, false);
        emit(step.c_row, false);
    }

    mc.set_start(mc.state(spine[0]).id);
    mc.validate();
    return mc;
}

namespace {

/// Builds off-spine states of the product model. Each state pairs two
/// side shapes; rows keep both side marginals equal to the single-side
/// rows, pairing every non-slack row with the other side's slack row.
class PairStates {
public:
    PairStates(const GeometryConstants& g, MarkovChain& mc) : g_(g), mc_(mc) {}

    static std::string tag(const std::string& prop, int side) {
        std::string suffix = side == 0 ? "1" : "2";
        return prop.size() == 1 ? prop + suffix : prop + "_" + suffix;
    }

    static std::vector<std::string> tagged_props(const Shape& s1, const Shape& s2) {
        std::vector<std::string> props;
        for (const auto& p : s1.props)
            props.push_back(tag(p, 0));
        for (const auto& p : s2.props)
            props.push_back(tag(p, 1));
        return props;
    }

    static std::string pair_id(const std::string& front, const Shape& s1, const Shape& s2) {
        auto cnt = [](const Shape& s) {
            return s.frozen() ? std::string("*") : std::to_string(s.counter);
        };
        return "[" + front + "|" + props_key(s1.props) + "|" + props_key(s2.props) + "|" +
               cnt(s1) + "|" + cnt(s2) + "]";
    }

    int state_for(const Shape& s1, const Shape& s2) {
        std::string id = pair_id("*", s1, s2);
        auto it = memo_.find(id);
        if (it != memo_.end())
            return it->second;
        int idx = mc_.add_state(id, tagged_props(s1, s2));
        memo_.emplace(id, idx);
        fill_rows(idx, s1, s2);
        return idx;
    }

private:
    static bool labeled(const Shape& s) {
        for (const auto& p : s.props)
            if (!p.empty() && p[0] == 'l')
                return true;
        return false;
    }

    void fill_rows(int idx, const Shape& s1, const Shape& s2) {
        if (labeled(s1) && labeled(s2))
            throw InvariantError("paired state carries both labels off the spine");
        if (labeled(s1)) {
            abandon_rows(idx, s1, s2, true);
        } else if (labeled(s2)) {
            abandon_rows(idx, s2, s1, false);
        } else if (s1.frozen() && s2.frozen()) {
            mc_.add_transition(idx, idx, Rat(1));
        } else if (s1.frozen()) {
            for (const Row& r : live_rows(g_, s2))
                mc_.add_transition(idx, state_for(s1, r.target), r.mass);
        } else if (s2.frozen()) {
            for (const Row& r : live_rows(g_, s1))
                mc_.add_transition(idx, state_for(r.target, s2), r.mass);
        } else {
            joint_rows(idx, s1, s2);
        }
    }

    /// Both sides live and unlabeled: each side's non-slack rows pair
    /// with the other side's slack shape, and the slack pair takes the
    /// remainder.
    void joint_rows(int idx, const Shape& s1, const Shape& s2) {
        std::vector<Row> p1 = live_rows(g_, s1);
        std::vector<Row> p2 = live_rows(g_, s2);
        Shape slack1 = p1.back().target;
        Shape slack2 = p2.back().target;
        Rat used(0);
        for (std::size_t r = 0; r + 1 < p1.size(); ++r) {
            mc_.add_transition(idx, state_for(p1[r].target, slack2), p1[r].mass);
            used += p1[r].mass;
        }
        for (std::size_t r = 0; r + 1 < p2.size(); ++r) {
            mc_.add_transition(idx, state_for(slack1, p2[r].target), p2[r].mass);
            used += p2[r].mass;
        }
        Rat rest = Rat(1) - used;
        if (!(rest > 0))
            throw InvariantError("slack row vanished at " + mc_.state(idx).id);
        mc_.add_transition(idx, state_for(slack1, slack2), rest);
    }

    /// One side still carries a label its partner dropped: that side
    /// abandons the run, decaying like an unlabeled state, while the
    /// partner's rows ride on the abandoning side's plain c row.
    void abandon_rows(int idx, const Shape& lab, const Shape& other, bool lab_is_first) {
        long long i = reg_phase(lab.props);
        long long n = lab.counter;
        Vec2 sk = iterate(g_, OrbitMap::Sigma, g_.kappa(), static_cast<unsigned>(n));
        std::string s1 = reg_name(i + 1);
        std::string s2 = reg_name(i + 2);

        Shape a_shape = n == 0 ? frozen_shape({"h", "a", s1}) : Shape{{"a", s1}, n - 1};
        Shape b_shape = frozen_shape({"h", "b", s2});
        Shape e_shape = frozen_shape({"h", "c", s2, "e"});
        Shape c_shape = frozen_shape({"h", "c", s2});

        auto pair_of = [&](const Shape& from_lab, const Shape& from_other) {
            return lab_is_first ? state_for(from_lab, from_other)
                                : state_for(from_other, from_lab);
        };

        if (other.frozen()) {
            mc_.add_transition(idx, pair_of(a_shape, other), sk.x1);
            mc_.add_transition(idx, pair_of(b_shape, other), sk.x2);
            mc_.add_transition(idx, pair_of(e_shape, other), Rat(1) - g_.q());
            mc_.add_transition(idx, pair_of(c_shape, other), g_.q() - sk.x1 - sk.x2);
            return;
        }
        std::vector<Row> rows = live_rows(g_, other);
        Shape slack = rows.back().target;
        Rat used = sk.x1 + sk.x2 + (Rat(1) - g_.q());
        mc_.add_transition(idx, pair_of(a_shape, slack), sk.x1);
        mc_.add_transition(idx, pair_of(b_shape, slack), sk.x2);
        mc_.add_transition(idx, pair_of(e_shape, slack), Rat(1) - g_.q());
        for (std::size_t r = 0; r + 1 < rows.size(); ++r) {
            mc_.add_transition(idx, pair_of(c_shape, rows[r].target), rows[r].mass);
            used += rows[r].mass;
        }
        Rat rest = Rat(1) - used;
        if (!(rest > 0))
            throw InvariantError("slack row vanished at " + mc_.state(idx).id);
        mc_.add_transition(idx, pair_of(c_shape, slack), rest);
    }

    const GeometryConstants& g_;
    MarkovChain& mc_;
    std::map<std::string, int> memo_;
};

} // namespace

MarkovChain model_product(const GeometryConstants& g, const SyncProduct& p,
                          const Computation& comp) {
    p.validate();
    require_periodic(comp);
    if (comp.config_at(0).counters.size() != 2)
        throw InputError("computation counters do not match the product");
    int beta = comp.period->second;
    for (int k = 0; k < beta; ++k) {
        std::size_t step = static_cast<std::size_t>(k);
        if (!config_in(product_successors(p, comp.config_at(step)), comp.config_at(step + 1)))
            throw InputError("computation does not follow the product at step " +
                             std::to_string(k));
    }

    SpineLayout layout = lay_out_spine(comp, 2);
    MarkovChain mc;
    PairStates pairs(g, mc);

    auto side_props = [&](int side, int k) {
        std::size_t i = static_cast<std::size_t>(k);
        std::size_t s = static_cast<std::size_t>(side);
        const Configuration& c = comp.config_at(i);
        return std::vector<std::string>{std::string(1, layout.shape[s][i]),
                                        reg_name(layout.phase[s][i]),
                                        "l" + std::to_string(c.label)};
    };
    std::vector<int> spine(static_cast<std::size_t>(layout.spine_length));
    for (int k = 0; k < layout.spine_length; ++k) {
        std::size_t i = static_cast<std::size_t>(k);
        const Configuration& c = comp.config_at(i);
        Shape sh1{side_props(0, k), c.counters[0]};
        Shape sh2{side_props(1, k), c.counters[1]};
        std::string id = PairStates::pair_id(std::to_string(k), sh1, sh2);
        spine[i] = mc.add_state(id, PairStates::tagged_props(sh1, sh2));
    }

    for (int k = 0; k < layout.spine_length; ++k) {
        std::size_t i = static_cast<std::size_t>(k);
        const Configuration& cur = comp.config_at(i);
        const Configuration& nxt = comp.config_at(i + 1);
        int kp = k + 1 == layout.spine_length ? layout.alpha : k + 1;
        SpineStep st1 = spine_step(g, layout.phase[0][i], cur.counters[0],
                                   p.m1.at_label(cur.label).kind == Instruction::Kind::Inc,
                                   nxt.label);
        SpineStep st2 = spine_step(g, layout.phase[1][i], cur.counters[1],
                                   p.m2.at_label(cur.label).kind == Instruction::Kind::Inc,
                                   nxt.label);

        const Row& c1 = st1.continuation();
        const Row& c2 = st2.continuation();
        Shape slack1 = st1.c_row.target;
        Shape slack2 = st2.c_row.target;
        Rat joint = c1.mass < c2.mass ? c1.mass : c2.mass;
        Rat used = joint;
        mc.add_transition(spine[i], spine[static_cast<std::size_t>(kp)], joint);
        if (c1.mass > joint) {
            mc.add_transition(spine[i], pairs.state_for(c1.target, slack2), c1.mass - joint);
            used += c1.mass - joint;
        }
        if (c2.mass > joint) {
            mc.add_transition(spine[i], pairs.state_for(slack1, c2.target), c2.mass - joint);
            used += c2.mass - joint;
        }
        auto leftovers = [&](const SpineStep& st) {
            std::vector<const Row*> rows;
            if (!st.continue_on_a)
                rows.push_back(&st.a_row);
            else
                rows.push_back(&st.b_row);
            rows.push_back(&st.e_row);
            return rows;
        };
        for (const Row* r : leftovers(st1)) {
            mc.add_transition(spine[i], pairs.state_for(r->target, slack2), r->mass);
            used += r->mass;
        }
        for (const Row* r : leftovers(st2)) {
            mc.add_transition(spine[i], pairs.state_for(slack1, r->target), r->mass);
            used += r->mass;
        }
        Rat rest = Rat(1) - used;
        if (!(rest > 0))
            throw InvariantError("slack row vanished at " + mc.state(spine[i]).id);
        mc.add_transition(spine[i], pairs.state_for(slack1, slack2), rest);
    }

    mc.set_start(mc.state(spine[0]).id);
    mc.validate();
    return mc;
}

} // namespace pctlab
