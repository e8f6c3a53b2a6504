#include "pctlab/compile.hpp"

#include "pctlab/errors.hpp"

#include <algorithm>

namespace pctlab {

namespace {

/// Formula fragments for one side of a construction. For the counting and
/// machine families there is a single untagged side; the product family
/// instantiates one builder per side, and every prop it emits carries the
/// side tag.
class SideBuilder {
public:
    SideBuilder(FormulaFactory& f, const GeometryConstants& g, Variant variant,
                int side, int labels)
        : f_(f), g_(g), variant_(variant), side_(side) {
        bases_ = {"a", "b", "c", "h"};
        for (int i = 0; i < 5; ++i) {
            bases_.push_back("r" + std::to_string(i));
        }
        if (labels > 0) {
            for (int j = 1; j <= labels; ++j) {
                bases_.push_back(label_name(j));
            }
            bases_.push_back("d");
            bases_.push_back("e");
        }
        universe_.reserve(bases_.size());
        for (const std::string& base : bases_) {
            universe_.push_back(tag(base));
        }
    }

    const std::vector<std::string>& universe() const { return universe_; }

    std::string tag(const std::string& base) const {
        if (side_ == 0) {
            return base;
        }
        const std::string suffix = side_ == 1 ? "1" : "2";
        return base.size() == 1 ? base + suffix : base + "_" + suffix;
    }

    FormulaPtr atom(const std::string& base) { return f_.atom(tag(base)); }

    static std::string reg_name(int i) { return "r" + std::to_string(((i % 5) + 5) % 5); }
    static std::string label_name(int j) { return "l" + std::to_string(j); }

    FormulaPtr reg(int i) { return atom(reg_name(i)); }
    FormulaPtr label(int j) { return atom(label_name(j)); }

    /// Literal conjunction pinning this side's valuation to exactly the
    /// given props, in universe order.
    FormulaPtr ex(const std::vector<std::string>& present) {
        for (const std::string& p : present) {
            if (std::find(bases_.begin(), bases_.end(), p) == bases_.end()) {
                throw InvariantError("prop '" + p + "' outside the universe");
            }
        }
        std::vector<FormulaPtr> lits;
        lits.reserve(bases_.size());
        for (const std::string& base : bases_) {
            const FormulaPtr at = atom(base);
            const bool on =
                std::find(present.begin(), present.end(), base) != present.end();
            lits.push_back(on ? at : f_.negation(at));
        }
        return f_.conj(lits);
    }

    FormulaPtr x_eq(const Rat& p, const FormulaPtr& body) {
        return f_.prob(Cmp::Eq, p, FormulaFactory::next(body));
    }

    /// X=kappa1 a  &  X=kappa2 b
    FormulaPtr zero() {
        return f_.conj(x_eq(g_.kappa().x1, atom("a")), x_eq(g_.kappa().x2, atom("b")));
    }

    /// The one-step mass window of live counting states. The strict
    /// reading caps the a-mass at kappa2 instead of kappa1.
    FormulaPtr interval() {
        const Rat cap = variant_ == Variant::Strict ? g_.kappa().x2 : g_.kappa().x1;
        return f_.conj({f_.prob(Cmp::Gt, g_.iq_lower(), FormulaFactory::next(atom("a"))),
                        f_.prob(Cmp::Le, cap, FormulaFactory::next(atom("a"))),
                        f_.prob(Cmp::Gt, Rat(0), FormulaFactory::next(atom("b")))});
    }

    /// Two-step mass q on the advanced register, split by the b flag.
    FormulaPtr eq(int i) {
        const FormulaPtr first =
            f_.prob_finally_bounded(Cmp::Eq, g_.q(), reg(i + 2), 2);
        const FormulaPtr split = f_.disj(f_.conj(reg(i + 2), f_.negation(atom("b"))),
                                         f_.conj(reg(i + 3), atom("b")));
        return f_.conj(first, f_.prob_finally_bounded(Cmp::Eq, g_.q(), split, 2));
    }

    FormulaPtr free_state() { return f_.conj(atom("h"), f_.exact_match(universe_)); }

    FormulaPtr fin() {
        std::vector<FormulaPtr> parts;
        for (int i = 0; i < 5; ++i) {
            const FormulaPtr fsuc = x_eq(
                Rat(1), f_.disj({ex({"h", "a", reg_name(i + 1)}),
                                 ex({"h", "b", reg_name(i + 2)}),
                                 ex({"h", "c", reg_name(i + 2)})}));
            parts.push_back(f_.conj({ex({"a", reg_name(i)}), fsuc, zero()}));
        }
        return f_.disj(parts);
    }

    FormulaPtr trans() {
        std::vector<FormulaPtr> parts;
        for (int i = 0; i < 5; ++i) {
            const FormulaPtr suc = x_eq(
                Rat(1), f_.disj({ex({"a", reg_name(i + 1)}),
                                 ex({"h", "b", reg_name(i + 2)}),
                                 ex({"h", "c", reg_name(i + 2)})}));
            parts.push_back(
                f_.conj({ex({"a", reg_name(i)}), suc, interval(), eq(i)}));
        }
        return f_.disj(parts);
    }

    FormulaPtr ctrans() {
        std::vector<FormulaPtr> parts;
        for (int i = 0; i < 5; ++i) {
            const FormulaPtr csuc = x_eq(
                Rat(1), f_.disj({ex({"a", reg_name(i + 1)}),
                                 ex({"h", "b", reg_name(i + 2)}),
                                 ex({"h", "c", reg_name(i + 2)}),
                                 ex({"h", "c", reg_name(i + 2), "d"})}));
            parts.push_back(f_.conj({atom("c"), reg(i), f_.negation(atom("h")), csuc,
                                     interval(), eq(i)}));
        }
        return f_.disj(parts);
    }

    /// Successor shapes of a zero-counter test step: the counting pair
    /// freezes and the continuation rides on the b state.
    FormulaPtr zsuc(int i, const std::vector<int>& targets) {
        std::vector<FormulaPtr> options;
        for (int t : targets) {
            options.push_back(x_eq(
                Rat(1), f_.disj({ex({"h", "a", reg_name(i + 1)}),
                                 ex({"h", "c", reg_name(i + 2)}),
                                 ex({"h", "c", reg_name(i + 2), "e"}),
                                 ex({"b", reg_name(i + 2), label_name(t)})})));
        }
        return f_.conj(f_.disj(options),
                       x_eq(Rat(1) - g_.q(), ex({"h", "c", reg_name(i + 2), "e"})));
    }

    /// Successor shapes of a decrement step: the continuation rides on the
    /// a state one rung down the orbit.
    FormulaPtr psuc(int i, const std::vector<int>& targets) {
        std::vector<FormulaPtr> options;
        for (int t : targets) {
            options.push_back(x_eq(
                Rat(1), f_.disj({ex({"h", "b", reg_name(i + 2)}),
                                 ex({"h", "c", reg_name(i + 2)}),
                                 ex({"h", "c", reg_name(i + 2), "e"}),
                                 ex({"a", reg_name(i + 1), label_name(t)})})));
        }
        return f_.conj(f_.disj(options),
                       x_eq(Rat(1) - g_.q(), ex({"h", "c", reg_name(i + 2), "e"})));
    }

    /// Increment from zero: like zsuc but the c states stay live, seeding
    /// the new count.
    FormulaPtr izsuc(int i, const std::vector<int>& targets) {
        std::vector<FormulaPtr> options;
        for (int t : targets) {
            options.push_back(x_eq(
                Rat(1), f_.disj({ex({"h", "a", reg_name(i + 1)}),
                                 ex({"c", reg_name(i + 2)}),
                                 ex({"c", reg_name(i + 2), "e"}),
                                 ex({"b", reg_name(i + 2), label_name(t)})})));
        }
        return f_.conj(f_.disj(options),
                       x_eq(Rat(1) - g_.q(), ex({"c", reg_name(i + 2), "e"})));
    }

    /// Increment from a positive count: the a state keeps counting down
    /// unlabeled while the labeled continuation rides on b.
    FormulaPtr ipsuc(int i, const std::vector<int>& targets) {
        std::vector<FormulaPtr> options;
        for (int t : targets) {
            options.push_back(x_eq(
                Rat(1), f_.disj({ex({"a", reg_name(i + 1)}),
                                 ex({"c", reg_name(i + 2)}),
                                 ex({"c", reg_name(i + 2), "e"}),
                                 ex({"b", reg_name(i + 2), label_name(t)})})));
        }
        return f_.conj(f_.disj(options),
                       x_eq(Rat(1) - g_.q(), ex({"c", reg_name(i + 2), "e"})));
    }

    /// One simulated step of the given instruction at register phase i,
    /// with explicit target sets for the zero and positive branches.
    FormulaPtr step_sets(int i, const Instruction& ins, const std::vector<int>& zero_targets,
                         const std::vector<int>& else_targets) {
        const FormulaPtr z = zero();
        if (ins.kind == Instruction::Kind::JzDec) {
            const FormulaPtr on_zero = f_.implies(
                z, f_.conj(zsuc(i, zero_targets), x_eq(Rat(1), f_.implies(atom("b"), z))));
            const FormulaPtr on_pos = f_.implies(
                f_.negation(z), f_.conj({psuc(i, else_targets), interval(), eq(i)}));
            return f_.conj(on_zero, on_pos);
        }
        const FormulaPtr on_zero = f_.implies(z, izsuc(i, zero_targets));
        const FormulaPtr probe_a = f_.prob_finally_bounded(
            Cmp::Eq, Rat(1) - g_.q(), f_.conj(atom("a"), reg(i + 3)), 2);
        const FormulaPtr probe_b = f_.prob_finally_bounded(
            Cmp::Eq, g_.gamma(),
            f_.disj(f_.conj(atom("b"), reg(i + 4)), atom("d")), 2);
        const FormulaPtr probe_c = f_.prob_finally_bounded(
            Cmp::Eq, g_.gamma(),
            f_.disj(f_.conj({atom("c"), reg(i + 4), atom("e")}), atom("d")), 2);
        if (variant_ == Variant::Strict) {
            const FormulaPtr on_pos = f_.implies(
                f_.negation(z), f_.conj({ipsuc(i, else_targets), interval(), eq(i),
                                         probe_a, probe_b, probe_c}));
            return f_.conj(on_zero, on_pos);
        }
        const FormulaPtr on_pos = f_.implies(
            f_.negation(z), f_.conj({ipsuc(i, else_targets), interval(), eq(i)}));
        return f_.conj({on_zero, on_pos, probe_a, probe_b, probe_c});
    }

    FormulaPtr step(int i, const Instruction& ins) {
        if (ins.kind == Instruction::Kind::JzDec) {
            return step_sets(i, ins, ins.targets, ins.else_targets);
        }
        return step_sets(i, ins, ins.targets, ins.targets);
    }

    /// Labeled transitions of a standalone machine.
    FormulaPtr ltrans(const Machine& m) {
        std::vector<FormulaPtr> parts;
        for (int i = 0; i < 5; ++i) {
            for (int j = 1; j <= m.label_count(); ++j) {
                for (const char* x : {"a", "b"}) {
                    parts.push_back(f_.conj(ex({x, reg_name(i), label_name(j)}),
                                            step(i, m.at_label(j))));
                }
            }
        }
        return f_.disj(parts);
    }

    /// Abandon shapes when the other side dropped the shared label: all
    /// successors freeze except, at a positive count, the a state that
    /// still has to count down.
    FormulaPtr ozsuc(int i) {
        return f_.conj(
            x_eq(Rat(1), f_.disj({ex({"h", "a", reg_name(i + 1)}),
                                  ex({"h", "b", reg_name(i + 2)}),
                                  ex({"h", "c", reg_name(i + 2)}),
                                  ex({"h", "c", reg_name(i + 2), "e"})})),
            x_eq(Rat(1) - g_.q(), ex({"h", "c", reg_name(i + 2), "e"})));
    }

    FormulaPtr opsuc(int i) {
        return f_.conj(
            x_eq(Rat(1), f_.disj({ex({"a", reg_name(i + 1)}),
                                  ex({"h", "b", reg_name(i + 2)}),
                                  ex({"h", "c", reg_name(i + 2)}),
                                  ex({"h", "c", reg_name(i + 2), "e"})})),
            x_eq(Rat(1) - g_.q(), ex({"h", "c", reg_name(i + 2), "e"})));
    }

    FormulaPtr abandon() {
        std::vector<FormulaPtr> at_zero;
        std::vector<FormulaPtr> at_pos;
        for (int i = 0; i < 5; ++i) {
            at_zero.push_back(f_.conj(reg(i), ozsuc(i)));
            at_pos.push_back(f_.conj(reg(i), opsuc(i)));
        }
        return f_.conj(f_.implies(zero(), f_.disj(at_zero)),
                       f_.implies(f_.negation(zero()), f_.disj(at_pos)));
    }

    FormulaFactory& factory() { return f_; }

private:
    FormulaFactory& f_;
    const GeometryConstants& g_;
    Variant variant_;
    int side_;
    std::vector<std::string> bases_;
    std::vector<std::string> universe_;
};

/// One simulated product step for `self`'s machine at label j. When the
/// other side owns the label, the jump targets are the owner's and are
/// picked by the owner's zero test.
FormulaPtr product_step(SideBuilder& self, SideBuilder& other, const SyncProduct& p,
                        int side, int i, int j) {
    FormulaFactory& f = self.factory();
    const Machine& own_machine = side == 1 ? p.m1 : p.m2;
    const Machine& other_machine = side == 1 ? p.m2 : p.m1;
    const Instruction& own = own_machine.at_label(j);
    if (p.owner_is_1(j) == (side == 1)) {
        return self.step(i, own);
    }
    const Instruction& owner = other_machine.at_label(j);
    if (owner.kind == Instruction::Kind::JzDec) {
        return f.conj(
            f.implies(other.zero(), self.step_sets(i, own, owner.targets, owner.targets)),
            f.implies(f.negation(other.zero()),
                      self.step_sets(i, own, owner.else_targets, owner.else_targets)));
    }
    return self.step_sets(i, own, owner.targets, owner.targets);
}

FormulaPtr product_sim(SideBuilder& self, SideBuilder& other, const SyncProduct& p,
                       int side) {
    FormulaFactory& f = self.factory();
    std::vector<FormulaPtr> parts;
    for (int i = 0; i < 5; ++i) {
        for (int j = 1; j <= p.label_count(); ++j) {
            for (const char* x : {"a", "b"}) {
                parts.push_back(
                    f.conj(self.ex({x, SideBuilder::reg_name(i),
                                    SideBuilder::label_name(j)}),
                           product_step(self, other, p, side, i, j)));
            }
        }
    }
    return f.disj(parts);
}

FormulaPtr product_ltrans(SideBuilder& self, SideBuilder& other, const SyncProduct& p,
                          int side) {
    FormulaFactory& f = self.factory();
    std::vector<FormulaPtr> agree;
    std::vector<FormulaPtr> disagree;
    for (int j = 1; j <= p.label_count(); ++j) {
        agree.push_back(f.conj(self.label(j), other.label(j)));
        disagree.push_back(f.conj(self.label(j), f.negation(other.label(j))));
    }
    return f.conj(f.implies(f.disj(agree), product_sim(self, other, p, side)),
                  f.implies(f.disj(disagree), self.abandon()));
}

} // namespace

Compilation compile_counting(FormulaFactory& f, const GeometryConstants& g, int n,
                             Variant variant) {
    if (n < 0) {
        throw InputError("counting parameter must be nonnegative");
    }
    SideBuilder b(f, g, variant, 0, 0);
    const Vec2 start = iterate(g, OrbitMap::Sigma, g.kappa(), static_cast<unsigned>(n));
    const FormulaPtr init = f.conj({b.ex({"a", "r0"}), b.x_eq(start.x1, f.atom("a")),
                                    b.x_eq(start.x2, f.atom("b"))});
    const FormulaPtr invariant = f.disj({b.fin(), b.trans(), b.free_state()});

    Compilation out;
    out.formula = f.conj(init, f.globally_one(invariant));
    out.family = "counting";
    out.universe = b.universe();
    out.start_masses = start;
    out.variant = variant;
    return out;
}

Compilation compile_machine(FormulaFactory& f, const GeometryConstants& g,
                            const Machine& m, Variant variant) {
    const ValidationReport report = validate_machine(m);
    if (!report.ok()) {
        throw InputError("machine invalid: " + report.violations.front());
    }
    if (m.counters != 1) {
        throw InputError("machine family expects a single counter");
    }
    SideBuilder b(f, g, variant, 0, m.label_count());
    const FormulaPtr init = f.conj(b.ex({"a", "r0", "l1"}), b.zero());
    const FormulaPtr invariant =
        f.disj({b.fin(), f.disj({b.trans(), b.ctrans(), b.ltrans(m)}), b.free_state()});

    Compilation out;
    out.formula = f.conj(init, f.globally_one(invariant));
    out.family = "machine";
    out.universe = b.universe();
    out.variant = variant;
    return out;
}

Compilation compile_product(FormulaFactory& f, const GeometryConstants& g,
                            const SyncProduct& p, bool recurrence, Variant variant) {
    p.validate();
    const int m = p.label_count();
    SideBuilder s1(f, g, variant, 1, m);
    SideBuilder s2(f, g, variant, 2, m);

    const FormulaPtr init1 = f.conj(s1.ex({"a", "r0", "l1"}), s1.zero());
    const FormulaPtr init2 = f.conj(s2.ex({"a", "r0", "l1"}), s2.zero());

    const FormulaPtr invariant1 =
        f.disj({s1.fin(), f.disj({s1.trans(), s1.ctrans(), product_ltrans(s1, s2, p, 1)}),
                s1.free_state()});
    const FormulaPtr invariant2 =
        f.disj({s2.fin(), f.disj({s2.trans(), s2.ctrans(), product_ltrans(s2, s1, p, 2)}),
                s2.free_state()});

    std::vector<FormulaPtr> pairs;
    for (int j = 1; j <= m; ++j) {
        pairs.push_back(f.conj(s1.label(j), s2.label(j)));
    }
    const FormulaPtr labels_agree = f.disj(pairs);
    const FormulaPtr lpass = f.implies(
        labels_agree, f.prob(Cmp::Gt, Rat(0), FormulaFactory::next(labels_agree)));

    FormulaPtr psi = f.conj({init1, init2,
                             f.globally_one(f.conj(f.conj(invariant1, invariant2), lpass))});
    if (recurrence) {
        const FormulaPtr pair = f.conj(s1.label(1), s2.label(1));
        const FormulaPtr revisit = f.prob(
            Cmp::Gt, Rat(0),
            FormulaFactory::next(f.prob(Cmp::Gt, Rat(0),
                                        FormulaFactory::until(f.truth(), pair))));
        psi = f.conj(psi, f.globally_one(f.implies(pair, revisit)));
    }

    Compilation out;
    out.formula = psi;
    out.family = "product";
    out.universe = s1.universe();
    out.universe.insert(out.universe.end(), s2.universe().begin(), s2.universe().end());
    out.variant = variant;
    out.recurrence = recurrence;
    return out;
}

} // namespace pctlab
