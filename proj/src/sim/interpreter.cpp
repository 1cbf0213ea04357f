// Copyright 2026 The dosscan Authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <utility>

#include <dosscan/sim/world.hpp>

namespace dosscan::sim {

using namespace frontend;

namespace {

    // Control signals. Reverts unwind to the nearest send/transfer/call
    // boundary or to the transaction; the others always abort the transaction.
    struct RevertSignal {
        std::string reason;
    };
    struct BudgetSignal {};
    struct UnsupportedSignal {
        std::string what;
    };
    struct StipendSignal {
        std::string what;
    };

    using Scope = std::vector<std::pair<std::string, Value>>;

    enum class Flow { kNormal, kBreak, kContinue, kReturn };

    enum class TransferMode { kSend, kTransfer, kCall };

    struct Invocation {
        const FunctionDecl* fn{nullptr};
        Scope scope;  // parameters and named returns
    };

    struct Frame {
        Address self;
        const SourceUnit* unit{nullptr};
        const ContractDecl* contract{nullptr};
        Address sender;
        Int value;
        bool stipend{false};
        int depth{0};
        std::vector<Scope> scopes;
        std::optional<Value> ret;
        std::vector<std::pair<Invocation*, std::size_t>> placeholders;
    };

    //! An assignable location: a local variable or a path into storage.
    struct Place {
        bool local{false};
        std::string name;
        Address account;
        std::vector<PathStep> steps;
    };

    bool is_state_place(const Place& p) { return !p.local; }

    std::string event_name(const SkippedRegion& r) {
        if (r.what != "event") return {};
        std::string_view t = r.text;
        t.remove_prefix(std::min<std::size_t>(5, t.size()));
        const auto b = t.find_first_not_of(" \t\r\n");
        if (b == std::string_view::npos) return {};
        t.remove_prefix(b);
        const auto e = t.find_first_of(" \t\r\n(");
        return std::string{t.substr(0, e)};
    }

    const FunctionDecl* find_by_signature(const ContractDecl& c, std::string_view sig) {
        if (sig == "()" || sig.empty()) return find_fallback(c);
        for (const auto& f : c.functions) {
            if (f.kind == FunctionKind::kRegular && f.signature() == sig) return &f;
        }
        return nullptr;
    }

    std::string join_values(const std::vector<Value>& args) {
        std::string out;
        for (std::size_t i = 0; i < args.size(); ++i) {
            if (i) out += ",";
            out += args[i].to_string();
        }
        return out;
    }

    class Machine {
      public:
        Machine(WorldState& world, Trace& trace, const SimOptions& options, Address origin)
            : world_(world), trace_(trace), options_(options), origin_(origin) {}

        Frame make_frame(Address self, Address sender, Int value, bool stipend, int depth) {
            const Account& acc = world_.at(self);
            Frame fr;
            fr.self = self;
            fr.unit = acc.unit.get();
            fr.contract = acc.contract;
            fr.sender = sender;
            fr.value = std::move(value);
            fr.stipend = stipend;
            fr.depth = depth;
            return fr;
        }

        void init_storage(Frame& fr) {
            Account& acc = world_.at(fr.self);
            for (const auto& sv : fr.contract->state_vars) {
                acc.storage[sv.name] = default_value(sv.type, *fr.contract, *fr.unit);
            }
            fr.scopes.emplace_back();
            for (const auto& sv : fr.contract->state_vars) {
                if (!sv.init) continue;
                step();
                Value v = coerce(eval(fr, *sv.init), sv.type);
                world_.at(fr.self).storage[sv.name] = std::move(v);
            }
            fr.scopes.clear();
        }

        Value run_function(Frame& fr, const FunctionDecl& f, const std::vector<Value>& args) {
            if (!f.body) unsupported(fr, "function without body");
            Invocation inv;
            inv.fn = &f;
            for (std::size_t i = 0; i < f.params.size(); ++i) {
                const Value v = i < args.size() ? coerce(args[i], f.params[i].type)
                                                : default_value(f.params[i].type, *fr.contract, *fr.unit);
                if (!f.params[i].name.empty()) inv.scope.emplace_back(f.params[i].name, v);
            }
            for (const auto& r : f.returns) {
                if (!r.name.empty()) inv.scope.emplace_back(r.name, default_value(r.type, *fr.contract, *fr.unit));
            }
            run_chain(fr, inv, 0);
            if (fr.ret) return *fr.ret;
            if (!f.returns.empty() && !f.returns[0].name.empty()) {
                for (const auto& [n, v] : inv.scope) {
                    if (n == f.returns[0].name) return v;
                }
            }
            return Value{};
        }

        //! value transfer plus fallback execution for send / transfer / call.
        bool value_call(Frame& fr, Address to, const Int& amount, TransferMode mode) {
            static constexpr std::string_view kNames[] = {"send", "transfer", "call"};
            const std::string name{kNames[static_cast<int>(mode)]};
            step();
            if (fr.stipend && amount > 0) stipend_abort(fr, "value transfer");
            trace(fr, name + " " + amount.str() + " to " + to.to_string());

            auto fail = [&](const std::string& why) -> bool {
                trace(fr, name + " to " + to.to_string() + " -> false (" + why + ")");
                if (mode == TransferMode::kTransfer) revert(fr, "transfer", why);
                return false;
            };

            if (world_.balance(fr.self) < amount) return fail("insufficient balance");
            WorldState snapshot = world_;
            move_value(fr.self, to, amount);
            const Account* acc = world_.find(to);
            if (acc && acc->has_code()) {
                const FunctionDecl* fb = find_fallback(*acc->contract);
                if (!fb) {
                    world_ = std::move(snapshot);
                    return fail("no fallback");
                }
                if (amount > 0 && !fb->is_payable) {
                    world_ = std::move(snapshot);
                    return fail("fallback not payable");
                }
                const bool stipend = mode != TransferMode::kCall || fr.stipend;
                Frame callee = make_frame(to, fr.self, amount, stipend, fr.depth + 1);
                trace(callee, "fallback from " + fr.self.to_string() + " value " + amount.str() +
                                  (stipend ? " stipend" : ""));
                try {
                    run_function(callee, *fb, {});
                } catch (const RevertSignal& r) {
                    world_ = std::move(snapshot);
                    return fail("reverted: " + r.reason);
                } catch (const StipendSignal& s) {
                    world_ = std::move(snapshot);
                    return fail("stipend exceeded: " + s.what);
                }
            }
            trace(fr, name + " to " + to.to_string() + " -> true");
            return true;
        }

        Value call_contract(Frame& fr, Address target, const std::string& name, const std::vector<Value>& args,
                            const Int& amount) {
            step();
            if (fr.stipend && amount > 0) stipend_abort(fr, "value transfer");
            const Account* acc = world_.find(target);
            if (!acc || !acc->has_code()) revert(fr, "call", "call to non-contract " + target.to_string());
            const ContractDecl& c = *acc->contract;
            const FunctionDecl* f = nullptr;
            for (const auto* cand : c.find_functions(name)) {
                if (cand->params.size() == args.size() && cand->externally_visible()) {
                    f = cand;
                    break;
                }
            }
            if (!f) {
                const StateVarDecl* sv = c.find_state_var(name);
                if (sv && sv->visibility == Visibility::kPublic) return public_getter(fr, target, *sv, args);
                f = find_fallback(c);
                if (!f) revert(fr, "call", "no function " + name + " on " + target.to_string());
            }
            if (amount > 0 && !f->is_payable) revert(fr, "call", "value to non-payable " + name);
            if (world_.balance(fr.self) < amount) revert(fr, "call", "insufficient balance");
            move_value(fr.self, target, amount);
            Frame callee = make_frame(target, fr.self, amount, fr.stipend, fr.depth + 1);
            trace(callee, (f->is_fallback() ? std::string{"fallback"} : "call " + f->signature()) + " from " +
                              fr.self.to_string() + " value " + amount.str() + " args (" + join_values(args) + ")");
            Value r = run_function(callee, *f, args);
            trace(callee, "return");
            return r;
        }

        void step() {
            if (++steps_ > options_.max_steps) {
                trace_.add(0, origin_, "step budget exhausted");
                throw BudgetSignal{};
            }
        }

        void move_value(Address from, Address to, const Int& amount) {
            if (amount == 0) return;
            world_.at(from).balance -= amount;
            Account* dst = world_.find(to);
            if (!dst) {
                // value sent to an address nobody created yet
                while (world_.next_address().id <= to.id) world_.create_account(0);
                dst = world_.find(to);
            }
            dst->balance += amount;
        }

        [[noreturn]] void revert(const Frame& fr, const std::string& origin, const std::string& message = {}) {
            trace(fr, "revert origin=" + origin + (message.empty() ? "" : " reason=" + message));
            throw RevertSignal{message.empty() ? origin : origin + ": " + message};
        }

        [[noreturn]] void unsupported(const Frame& fr, const std::string& what) {
            trace(fr, "unsupported: " + what);
            throw UnsupportedSignal{what};
        }

        [[noreturn]] void stipend_abort(const Frame& fr, const std::string& what) {
            trace(fr, "stipend abort: " + what);
            throw StipendSignal{what};
        }

        void trace(const Frame& fr, std::string event) { trace_.add(fr.depth, fr.self, std::move(event)); }

      private:
        // ---- modifiers ---------------------------------------------------------

        const ModifierDecl* resolve_modifier(const Frame& fr, std::string_view name) const {
            if (const auto* m = fr.contract->find_modifier(name)) return m;
            for (const auto& c : fr.unit->contracts) {
                if (const auto* m = c.find_modifier(name)) return m;
            }
            return nullptr;
        }

        void run_chain(Frame& fr, Invocation& inv, std::size_t i) {
            const FunctionDecl& f = *inv.fn;
            if (i == f.modifiers.size()) {
                auto saved = std::move(fr.scopes);
                fr.scopes.clear();
                fr.scopes.push_back(std::move(inv.scope));
                exec_block(fr, *f.body);
                inv.scope = std::move(fr.scopes.front());
                fr.scopes = std::move(saved);
                return;
            }
            const ModifierInvocation& mi = f.modifiers[i];
            const ModifierDecl* m = resolve_modifier(fr, mi.name);
            if (!m) {
                // base constructor arguments: `constructor() Base(1) public`
                if (f.kind == FunctionKind::kConstructor && fr.unit->find_contract(mi.name)) {
                    run_chain(fr, inv, i + 1);
                    return;
                }
                unsupported(fr, "modifier " + mi.name);
            }
            Scope mscope;
            {
                auto saved = std::move(fr.scopes);
                fr.scopes.clear();
                fr.scopes.push_back(inv.scope);
                for (std::size_t k = 0; k < m->params.size(); ++k) {
                    Value v = k < mi.args.size() ? eval(fr, mi.args[k]) : Value{};
                    mscope.emplace_back(m->params[k].name, coerce(std::move(v), m->params[k].type));
                }
                fr.scopes = std::move(saved);
            }
            auto saved = std::move(fr.scopes);
            fr.scopes.clear();
            fr.scopes.push_back(std::move(mscope));
            fr.placeholders.emplace_back(&inv, i + 1);
            exec_block(fr, m->body);
            fr.placeholders.pop_back();
            fr.scopes = std::move(saved);
        }

        // ---- statements ----------------------------------------------------------

        Flow exec_block(Frame& fr, const Block& b) {
            fr.scopes.emplace_back();
            for (const auto& s : b.statements) {
                const Flow flow = exec(fr, s);
                if (flow != Flow::kNormal) {
                    fr.scopes.pop_back();
                    return flow;
                }
            }
            fr.scopes.pop_back();
            return Flow::kNormal;
        }

        Flow exec(Frame& fr, const Stmt& s) {
            step();
            if (const auto* n = s.as<Block>()) return exec_block(fr, *n);
            if (const auto* n = s.as<IfStmt>()) {
                if (truthy(fr, eval(fr, n->condition))) return exec_block(fr, n->then_branch);
                if (n->else_branch) return exec_block(fr, *n->else_branch);
                return Flow::kNormal;
            }
            if (const auto* n = s.as<ForStmt>()) {
                fr.scopes.emplace_back();
                if (n->init) exec(fr, **n->init);
                Flow result = Flow::kNormal;
                while (true) {
                    step();
                    if (n->condition && !truthy(fr, eval(fr, *n->condition))) break;
                    const Flow flow = exec_block(fr, n->body);
                    if (flow == Flow::kBreak) break;
                    if (flow == Flow::kReturn) {
                        result = flow;
                        break;
                    }
                    if (n->post) eval(fr, *n->post);
                }
                fr.scopes.pop_back();
                return result;
            }
            if (const auto* n = s.as<WhileStmt>()) {
                bool first = true;
                while (true) {
                    step();
                    if (!(n->do_while && first) && !truthy(fr, eval(fr, n->condition))) break;
                    first = false;
                    const Flow flow = exec_block(fr, n->body);
                    if (flow == Flow::kBreak) break;
                    if (flow == Flow::kReturn) return flow;
                }
                return Flow::kNormal;
            }
            if (const auto* n = s.as<ExprStmt>()) {
                eval(fr, n->expr);
                return Flow::kNormal;
            }
            if (s.as<ThrowStmt>()) revert(fr, "throw");
            if (const auto* n = s.as<VarDeclStmt>()) {
                declare(fr, *n);
                return Flow::kNormal;
            }
            if (const auto* n = s.as<ReturnStmt>()) {
                fr.ret = n->value ? eval(fr, *n->value) : Value{};
                return Flow::kReturn;
            }
            if (s.as<PlaceholderStmt>()) {
                if (fr.placeholders.empty()) unsupported(fr, "placeholder outside modifier");
                const auto [inv, next] = fr.placeholders.back();
                fr.placeholders.pop_back();
                auto saved = std::move(fr.scopes);
                run_chain(fr, *inv, next);
                fr.scopes = std::move(saved);
                fr.placeholders.emplace_back(inv, next);
                return Flow::kNormal;
            }
            if (const auto* n = s.as<EmitStmt>()) {
                std::string name = "?";
                if (const auto* call = n->event.as<Call>()) {
                    if (const auto* id = call->callee->as<Identifier>()) name = id->name;
                    for (const auto& a : call->args) eval(fr, a);
                }
                trace(fr, "emit " + name);
                return Flow::kNormal;
            }
            if (s.as<BreakStmt>()) return Flow::kBreak;
            if (s.as<ContinueStmt>()) return Flow::kContinue;
            if (const auto* n = s.as<SkippedStmt>()) unsupported(fr, n->what);
            return Flow::kNormal;
        }

        void declare(Frame& fr, const VarDeclStmt& d) {
            Value v;
            if (d.init) {
                const bool may_ref =
                    d.location == "storage" ||
                    (d.location.empty() && (!d.type || d.type->kind != TypeName::Kind::kElementary));
                std::optional<Place> p;
                if (may_ref) p = place(fr, *d.init);
                if (p && is_state_place(*p)) {
                    const Value& target = peek(fr, *p);
                    if (target.as<StructValue>() || target.as<ArrayValue>() || target.as<MappingValue>()) {
                        v = StorageRef{p->account, p->name, p->steps};
                    }
                }
                if (v.is_unit()) {
                    v = eval(fr, *d.init);
                    if (d.type) v = coerce(std::move(v), *d.type);
                }
            } else if (d.type) {
                v = default_value(*d.type, *fr.contract, *fr.unit);
            }
            fr.scopes.back().emplace_back(d.name, std::move(v));
        }

        // ---- places ----------------------------------------------------------------

        Value* find_local(Frame& fr, std::string_view name) {
            for (auto s = fr.scopes.rbegin(); s != fr.scopes.rend(); ++s) {
                for (auto it = s->rbegin(); it != s->rend(); ++it) {
                    if (it->first == name) return &it->second;
                }
            }
            return nullptr;
        }

        MapKey to_key(const Frame& fr, Value v) {
            if (auto* i = v.as<Int>()) return std::move(*i);
            if (auto* a = v.as<Address>()) return *a;
            if (auto* b = v.as<bool>()) return *b;
            if (auto* s = v.as<std::string>()) return std::move(*s);
            unsupported(fr, "mapping key " + v.to_string());
        }

        std::optional<Place> place(Frame& fr, const Expr& e) {
            if (const auto* id = e.as<Identifier>()) {
                if (Value* local = find_local(fr, id->name)) {
                    if (const auto* ref = local->as<StorageRef>()) return Place{false, ref->var, ref->account, ref->steps};
                    return Place{true, id->name, {}, {}};
                }
                if (fr.contract->find_state_var(id->name)) return Place{false, id->name, fr.self, {}};
                return std::nullopt;
            }
            if (const auto* ix = e.as<IndexAccess>()) {
                auto p = place(fr, *ix->base);
                if (!p) return std::nullopt;
                const Value& base = peek(fr, *p);
                if (!base.as<ArrayValue>() && !base.as<MappingValue>()) return std::nullopt;
                p->steps.emplace_back(to_key(fr, eval(fr, *ix->index)));
                return p;
            }
            if (const auto* ma = e.as<MemberAccess>()) {
                auto p = place(fr, *ma->base);
                if (!p) return std::nullopt;
                const Value& base = peek(fr, *p);
                if (!base.as<StructValue>()) return std::nullopt;
                p->steps.emplace_back(MemberStep{ma->member});
                return p;
            }
            return std::nullopt;
        }

        const Value& step_into(const Frame& fr, const Value& cur, const PathStep& st) {
            if (const auto* key = std::get_if<MapKey>(&st)) {
                if (const auto* arr = cur.as<ArrayValue>()) {
                    const Int* i = std::get_if<Int>(key);
                    if (!i || *i < 0 || *i >= arr->items.size()) revert(fr, "bounds", "array index out of range");
                    return arr->items[static_cast<std::size_t>(*i)];
                }
                if (const auto* m = cur.as<MappingValue>()) {
                    if (const Value* v = m->find(*key)) return *v;
                    return *m->value_default;
                }
                unsupported(fr, "index into " + cur.to_string());
            }
            const auto& member = std::get<MemberStep>(st).name;
            if (const auto* sv = cur.as<StructValue>()) {
                if (const Value* f = sv->field(member)) return *f;
            }
            unsupported(fr, "member " + member);
        }

        const Value& peek(Frame& fr, const Place& p) {
            const Value* cur = nullptr;
            if (p.local) {
                cur = find_local(fr, p.name);
            } else {
                cur = world_.storage(p.account, p.name);
            }
            if (!cur) unsupported(fr, "unknown variable " + p.name);
            for (const auto& st : p.steps) cur = &step_into(fr, *cur, st);
            return *cur;
        }

        Value& mut(Frame& fr, const Place& p) {
            Value* cur = nullptr;
            if (p.local) {
                cur = find_local(fr, p.name);
            } else {
                if (fr.stipend) stipend_abort(fr, "state write " + p.name);
                Account& acc = world_.at(p.account);
                auto it = acc.storage.find(p.name);
                if (it != acc.storage.end()) cur = &it->second;
            }
            if (!cur) unsupported(fr, "unknown variable " + p.name);
            for (const auto& st : p.steps) {
                if (const auto* key = std::get_if<MapKey>(&st)) {
                    if (auto* arr = cur->as<ArrayValue>()) {
                        const Int* i = std::get_if<Int>(key);
                        if (!i || *i < 0 || *i >= arr->items.size()) revert(fr, "bounds", "array index out of range");
                        cur = &arr->items[static_cast<std::size_t>(*i)];
                    } else if (auto* m = cur->as<MappingValue>()) {
                        cur = &m->at_or_insert(*key);
                    } else {
                        unsupported(fr, "index into " + cur->to_string());
                    }
                } else {
                    auto* sv = cur->as<StructValue>();
                    Value* f = sv ? sv->field(std::get<MemberStep>(st).name) : nullptr;
                    if (!f) unsupported(fr, "member " + std::get<MemberStep>(st).name);
                    cur = f;
                }
            }
            return *cur;
        }

        static Value like(const Value& existing, Value v) {
            if (existing.as<Address>()) {
                if (const auto* i = v.as<Int>()) return Address{static_cast<std::uint32_t>(*i & 0xffffffffu)};
            } else if (existing.as<Int>()) {
                if (const auto* a = v.as<Address>()) return Int{a->id};
            }
            return v;
        }

        Value assign(Frame& fr, const Expr& lhs, Value v) {
            if (const auto* ma = lhs.as<MemberAccess>(); ma && ma->member == "length") {
                auto p = place(fr, *ma->base);
                if (!p) unsupported(fr, "length assignment");
                auto* arr = mut(fr, *p).as<ArrayValue>();
                if (!arr || arr->fixed) unsupported(fr, "length assignment");
                const Int n = as_int(fr, v);
                if (n < 0) revert(fr, "bounds", "negative length");
                arr->items.resize(static_cast<std::size_t>(n), *arr->element_default);
                return v;
            }
            auto p = place(fr, lhs);
            if (!p) unsupported(fr, "assignment target");
            Value& target = mut(fr, *p);
            target = like(target, std::move(v));
            return target;
        }

        // ---- expressions -------------------------------------------------------------

        Int as_int(const Frame& fr, const Value& v) {
            if (const auto* i = v.as<Int>()) return *i;
            if (const auto* a = v.as<Address>()) return Int{a->id};
            if (const auto* b = v.as<bool>()) return Int{*b ? 1 : 0};
            unsupported(fr, "integer expected, got " + v.to_string());
        }

        Address as_address(const Frame& fr, const Value& v) {
            if (const auto* a = v.as<Address>()) return *a;
            if (const auto* i = v.as<Int>()) return Address{static_cast<std::uint32_t>(*i & 0xffffffffu)};
            unsupported(fr, "address expected, got " + v.to_string());
        }

        bool truthy(const Frame& fr, const Value& v) {
            if (const auto* b = v.as<bool>()) return *b;
            if (const auto* i = v.as<Int>()) return *i != 0;
            unsupported(fr, "bool expected, got " + v.to_string());
        }

        static bool equal(const Value& a, const Value& b) {
            const auto* aa = a.as<Address>();
            const auto* bb = b.as<Address>();
            if (aa && !bb) {
                if (const auto* i = b.as<Int>()) return Int{aa->id} == *i;
            }
            if (bb && !aa) {
                if (const auto* i = a.as<Int>()) return Int{bb->id} == *i;
            }
            return a == b;
        }

        Value eval(Frame& fr, const Expr& e) {
            if (e.as<Identifier>() || e.as<IndexAccess>() || e.as<MemberAccess>()) {
                if (auto p = place(fr, e)) {
                    Value v = peek(fr, *p);
                    return v;
                }
            }
            if (const auto* id = e.as<Identifier>()) return eval_identifier(fr, id->name);
            if (e.as<MsgSender>()) return fr.sender;
            if (e.as<MsgValue>()) return fr.value;
            if (const auto* lit = e.as<Literal>()) {
                switch (lit->kind) {
                    case Literal::Kind::kNumber:
                        return parse_number(lit->text, lit->unit);
                    case Literal::Kind::kString:
                        return lit->text;
                    case Literal::Kind::kBool:
                        return lit->text == "true";
                }
            }
            if (const auto* ma = e.as<MemberAccess>()) return eval_member(fr, *ma);
            if (const auto* ix = e.as<IndexAccess>()) {
                Value base = eval(fr, *ix->base);
                Value index = eval(fr, *ix->index);
                if (const auto* s = base.as<std::string>()) {
                    const Int i = as_int(fr, index);
                    if (i < 0 || i >= s->size()) revert(fr, "bounds", "string index out of range");
                    return Int{static_cast<unsigned char>((*s)[static_cast<std::size_t>(i)])};
                }
                return step_into(fr, base, to_key(fr, std::move(index)));
            }
            if (const auto* call = e.as<Call>()) return eval_call(fr, *call);
            if (const auto* g = e.as<BuiltinGuard>()) return eval_guard(fr, *g);
            if (const auto* u = e.as<Unary>()) return eval_unary(fr, *u);
            if (const auto* b = e.as<Binary>()) return eval_binary(fr, *b);
            if (const auto* c = e.as<Conditional>()) {
                return truthy(fr, eval(fr, *c->condition)) ? eval(fr, *c->if_true) : eval(fr, *c->if_false);
            }
            unsupported(fr, "expression");
        }

        Value eval_identifier(Frame& fr, const std::string& name) {
            if (name == "this") return fr.self;
            if (name == "now") return options_.block_timestamp;
            unsupported(fr, "identifier " + name);
        }

        Value eval_member(Frame& fr, const MemberAccess& ma) {
            if (const auto* id = ma.base->as<Identifier>(); id && !find_local(fr, id->name) &&
                                                            !fr.contract->find_state_var(id->name)) {
                if (id->name == "block") {
                    if (ma.member == "timestamp") return options_.block_timestamp;
                    if (ma.member == "number") return options_.block_number;
                }
                if (id->name == "tx" && ma.member == "origin") return origin_;
            }
            if (ma.member == "length") {
                Value base;
                if (auto p = place(fr, *ma.base)) {
                    const Value& b = peek(fr, *p);
                    if (const auto* arr = b.as<ArrayValue>()) return Int{arr->items.size()};
                    base = b;
                } else {
                    base = eval(fr, *ma.base);
                }
                if (const auto* arr = base.as<ArrayValue>()) return Int{arr->items.size()};
                if (const auto* s = base.as<std::string>()) return Int{s->size()};
                unsupported(fr, "length of " + base.to_string());
            }
            Value base = eval(fr, *ma.base);
            if (ma.member == "balance") return world_.balance(as_address(fr, base));
            if (const auto* sv = base.as<StructValue>()) {
                if (const Value* f = sv->field(ma.member)) return *f;
            }
            unsupported(fr, "member " + ma.member);
        }

        Value eval_guard(Frame& fr, const BuiltinGuard& g) {
            const std::string origin{to_string(g.kind)};
            if (g.kind == GuardKind::kRevert) {
                std::string message;
                if (!g.args.empty()) {
                    const Value m = eval(fr, g.args[0]);
                    if (const auto* s = m.as<std::string>()) message = *s;
                }
                revert(fr, origin, message);
            }
            const bool ok = truthy(fr, eval(fr, g.args.at(0)));
            if (!ok) {
                std::string message;
                if (g.args.size() > 1) {
                    const Value m = eval(fr, g.args[1]);
                    if (const auto* s = m.as<std::string>()) message = *s;
                }
                trace(fr, "guard " + origin + " failed");
                revert(fr, origin, message);
            }
            return Value{};
        }

        Value eval_unary(Frame& fr, const Unary& u) {
            if (u.op == "!") return !truthy(fr, eval(fr, *u.operand));
            if (u.op == "-") return Int{-as_int(fr, eval(fr, *u.operand))};
            if (u.op == "+") return as_int(fr, eval(fr, *u.operand));
            if (u.op == "~") return Int{-as_int(fr, eval(fr, *u.operand)) - 1};
            if (u.op == "delete") {
                auto p = place(fr, *u.operand);
                if (!p) unsupported(fr, "delete target");
                reset_value(mut(fr, *p));
                return Value{};
            }
            if (u.op == "++" || u.op == "--") {
                const Int old = as_int(fr, eval(fr, *u.operand));
                const Int updated = u.op == "++" ? Int{old + 1} : Int{old - 1};
                assign(fr, *u.operand, updated);
                return u.postfix ? old : updated;
            }
            unsupported(fr, "operator " + u.op);
        }

        Value arith(Frame& fr, const std::string& op, const Value& a, const Value& b) {
            if (op == "==") return equal(a, b);
            if (op == "!=") return !equal(a, b);
            const Int x = as_int(fr, a);
            const Int y = as_int(fr, b);
            if (op == "+") return Int{x + y};
            if (op == "-") return Int{x - y};
            if (op == "*") return Int{x * y};
            if (op == "/" || op == "%") {
                if (y == 0) revert(fr, "division", "division by zero");
                return op == "/" ? Int{x / y} : Int{x % y};
            }
            if (op == "**") {
                if (y < 0 || y > 4096) unsupported(fr, "exponent " + y.str());
                return Int{boost::multiprecision::pow(x, static_cast<unsigned>(y))};
            }
            if (op == "<") return x < y;
            if (op == "<=") return x <= y;
            if (op == ">") return x > y;
            if (op == ">=") return x >= y;
            if (op == "&") return Int{x & y};
            if (op == "|") return Int{x | y};
            if (op == "^") return Int{x ^ y};
            if (op == "<<" || op == ">>") {
                if (y < 0 || y > 4096) unsupported(fr, "shift " + y.str());
                const auto n = static_cast<unsigned>(y);
                return op == "<<" ? Int{x << n} : Int{x >> n};
            }
            unsupported(fr, "operator " + op);
        }

        Value eval_binary(Frame& fr, const Binary& b) {
            if (b.op == "=") return assign(fr, *b.lhs, eval(fr, *b.rhs));
            if (b.op == "&&") return truthy(fr, eval(fr, *b.lhs)) && truthy(fr, eval(fr, *b.rhs));
            if (b.op == "||") return truthy(fr, eval(fr, *b.lhs)) || truthy(fr, eval(fr, *b.rhs));
            if (b.op.size() >= 2 && b.op.back() == '=' && b.op != "==" && b.op != "!=" && b.op != "<=" &&
                b.op != ">=") {
                const std::string op = b.op.substr(0, b.op.size() - 1);
                const Value cur = eval(fr, *b.lhs);
                const Value rhs = eval(fr, *b.rhs);
                return assign(fr, *b.lhs, arith(fr, op, cur, rhs));
            }
            const Value lhs = eval(fr, *b.lhs);
            const Value rhs = eval(fr, *b.rhs);
            return arith(fr, b.op, lhs, rhs);
        }

        std::vector<Value> eval_args(Frame& fr, const std::vector<Expr>& args) {
            std::vector<Value> out;
            out.reserve(args.size());
            for (const auto& a : args) out.push_back(eval(fr, a));
            return out;
        }

        Value call_internal(Frame& fr, const FunctionDecl& f, const std::vector<Value>& args) {
            step();
            Frame callee;
            callee.self = fr.self;
            callee.unit = fr.unit;
            callee.contract = fr.contract;
            callee.sender = fr.sender;
            callee.value = fr.value;
            callee.stipend = fr.stipend;
            callee.depth = fr.depth;
            return run_function(callee, f, args);
        }

        Value public_getter(Frame& fr, Address target, const StateVarDecl& sv, const std::vector<Value>& args) {
            const Value* v = world_.storage(target, sv.name);
            if (!v) revert(fr, "call", "no state variable " + sv.name);
            const Value* cur = v;
            for (const auto& a : args) cur = &step_into(fr, *cur, to_key(fr, a));
            return *cur;
        }

        Value eval_call(Frame& fr, const Call& call) {
            const Expr& callee = *call.callee;
            if (const auto* nw = callee.as<NewExpr>()) {
                if (nw->type.kind == TypeName::Kind::kArray && call.args.size() == 1) {
                    Value arr = default_value(nw->type, *fr.contract, *fr.unit);
                    const Int n = as_int(fr, eval(fr, call.args[0]));
                    if (n < 0 || n > 100000) unsupported(fr, "array size " + n.str());
                    auto* a = arr.as<ArrayValue>();
                    a->items.assign(static_cast<std::size_t>(n), *a->element_default);
                    return arr;
                }
                unsupported(fr, "new " + nw->type.text());
            }
            if (const auto* id = callee.as<Identifier>()) return call_identifier(fr, id->name, call);
            if (const auto* ma = callee.as<MemberAccess>()) return call_member(fr, *ma, call);
            unsupported(fr, "call form");
        }

        Value call_identifier(Frame& fr, const std::string& name, const Call& call) {
            const std::size_t argc = call.args.size();
            if (name == "payable" && argc == 1) return as_address(fr, eval(fr, call.args[0]));
            if (is_elementary_type_name(name) && argc == 1) {
                TypeName t;
                t.name = name;
                Value v = eval(fr, call.args[0]);
                if (t.is_address()) return as_address(fr, v);
                if (t.is_integer()) return as_int(fr, v);
                if (t.is_bool()) return truthy(fr, v);
                return v;
            }
            for (const auto* f : fr.contract->find_functions(name)) {
                if (f->params.size() == argc) {
                    const auto args = eval_args(fr, call.args);
                    return call_internal(fr, *f, args);
                }
            }
            if (const auto* s = find_struct(name, *fr.contract, *fr.unit)) {
                auto args = eval_args(fr, call.args);
                if (args.size() != s->fields.size()) unsupported(fr, "struct constructor " + name);
                StructValue sv;
                sv.type_name = s->name;
                for (std::size_t i = 0; i < args.size(); ++i) {
                    sv.fields.emplace_back(s->fields[i].name, coerce(std::move(args[i]), s->fields[i].type));
                }
                return sv;
            }
            for (const auto& r : fr.contract->skipped) {
                if (event_name(r) == name) {
                    eval_args(fr, call.args);
                    trace(fr, "emit " + name);
                    return Value{};
                }
            }
            // contract / interface conversion: `Token(addr)`
            if (argc == 1) {
                Value v = eval(fr, call.args[0]);
                if (v.as<Address>()) return v;
            }
            unsupported(fr, "function " + name);
        }

        Value call_member(Frame& fr, const MemberAccess& ma, const Call& call) {
            const std::string& m = ma.member;
            if (m == "send" || m == "transfer") {
                const Address to = as_address(fr, eval(fr, *ma.base));
                if (call.args.size() != 1) unsupported(fr, m + " arity");
                const Int amount = as_int(fr, eval(fr, call.args[0]));
                const bool ok = value_call(fr, to, amount, m == "send" ? TransferMode::kSend : TransferMode::kTransfer);
                return ok;
            }
            if (m == "call") {
                const Address to = as_address(fr, eval(fr, *ma.base));
                const Int amount = call.value ? as_int(fr, eval(fr, **call.value)) : Int{0};
                eval_args(fr, call.args);
                return value_call(fr, to, amount, TransferMode::kCall);
            }
            if (m == "delegatecall" || m == "staticcall" || m == "callcode") unsupported(fr, m);
            if (m == "push" || m == "pop") {
                auto p = place(fr, *ma.base);
                if (!p) unsupported(fr, m + " target");
                auto args = eval_args(fr, call.args);
                auto* arr = mut(fr, *p).as<ArrayValue>();
                if (!arr || arr->fixed) unsupported(fr, m + " on non-dynamic array");
                if (m == "pop") {
                    if (arr->items.empty()) revert(fr, "bounds", "pop on empty array");
                    arr->items.pop_back();
                    return Value{};
                }
                arr->items.push_back(args.empty() ? *arr->element_default
                                                  : like(*arr->element_default, std::move(args[0])));
                return Int{arr->items.size()};
            }
            if (const auto* id = ma.base->as<Identifier>(); id && (id->name == "abi" || id->name == "super")) {
                unsupported(fr, id->name + "." + m);
            }
            Value base = eval(fr, *ma.base);
            if (const auto* x = base.as<Int>()) {
                if (call.args.size() == 1 && (m == "add" || m == "sub" || m == "mul" || m == "div" || m == "mod")) {
                    const Int y = as_int(fr, eval(fr, call.args[0]));
                    if (m == "add") return Int{*x + y};
                    if (m == "sub") {
                        if (y > *x) revert(fr, "require", "subtraction overflow");
                        return Int{*x - y};
                    }
                    if (m == "mul") return Int{*x * y};
                    if (y == 0) revert(fr, "require", "division by zero");
                    return m == "div" ? Int{*x / y} : Int{*x % y};
                }
            }
            if (const auto* target = base.as<Address>()) {
                const auto args = eval_args(fr, call.args);
                const Int amount = call.value ? as_int(fr, eval(fr, **call.value)) : Int{0};
                return call_contract(fr, *target, m, args, amount);
            }
            unsupported(fr, "member call " + m);
        }

        WorldState& world_;
        Trace& trace_;
        const SimOptions& options_;
        Address origin_;
        std::uint64_t steps_{0};
    };

    TxOutcome success(Value v) {
        TxOutcome o;
        o.return_value = std::move(v);
        return o;
    }

    TxOutcome failure(TxOutcome::Kind kind, std::string reason) {
        TxOutcome o;
        o.kind = kind;
        o.reason = std::move(reason);
        return o;
    }

}  // namespace

std::string TxOutcome::to_string() const {
    switch (kind) {
        case Kind::kSuccess:
            return "Success";
        case Kind::kReverted:
            return "Reverted(" + reason + ")";
        case Kind::kStepBudgetExhausted:
            return "StepBudgetExhausted";
        case Kind::kUnsupported:
            return "Unsupported(" + reason + ")";
    }
    return "?";
}

DeployResult deploy(WorldState& world, std::shared_ptr<const SourceUnit> unit, std::string_view contract_name,
                    const std::vector<Value>& args, const Int& endowment, Address from, const SimOptions& options) {
    if (!unit) throw DeployError("no source unit");
    const ContractDecl* contract = unit->find_contract(contract_name);
    if (!contract) throw DeployError("unknown contract " + std::string{contract_name});
    const FunctionDecl* ctor = contract->find_constructor();
    const std::size_t arity = ctor ? ctor->params.size() : 0;
    if (args.size() != arity) {
        throw DeployError("constructor of " + contract->name + " takes " + std::to_string(arity) + " arguments");
    }
    if (endowment < 0 || world.balance(from) < endowment) throw DeployError("insufficient balance for endowment");

    DeployResult result;
    WorldState snapshot = world;
    Machine machine(world, result.trace, options, from);
    try {
        const Address self = world.add_contract(unit, *contract, contract->name);
        machine.move_value(from, self, endowment);
        Frame fr = machine.make_frame(self, from, endowment, false, 0);
        machine.trace(fr, "deploy " + contract->name + " from " + from.to_string() + " value " + endowment.str());
        machine.init_storage(fr);
        if (ctor) machine.run_function(fr, *ctor, args);
        result.address = self;
    } catch (const RevertSignal& r) {
        world = std::move(snapshot);
        result.outcome = failure(TxOutcome::Kind::kReverted, r.reason);
    } catch (const BudgetSignal&) {
        world = std::move(snapshot);
        result.outcome = failure(TxOutcome::Kind::kStepBudgetExhausted, {});
    } catch (const UnsupportedSignal& u) {
        world = std::move(snapshot);
        result.outcome = failure(TxOutcome::Kind::kUnsupported, u.what);
    }
    return result;
}

InvokeResult invoke(WorldState& world, Address caller, Address target, std::string_view signature,
                    const std::vector<Value>& args, const Int& value, const SimOptions& options) {
    const Account* acc = world.find(target);
    if (!acc || !acc->has_code()) throw SimError("no contract at " + target.to_string());
    const FunctionDecl* f = find_by_signature(*acc->contract, signature);
    if (!f) f = find_fallback(*acc->contract);
    if (!f) throw SimError("no function " + std::string{signature} + " and no fallback");
    if (!f->is_fallback() && !f->externally_visible()) throw SimError(f->signature() + " is not externally visible");
    if (!f->is_fallback() && args.size() != f->params.size()) throw SimError("wrong argument count for " + f->signature());
    if (value > 0 && !f->is_payable) throw SimError("value sent to non-payable " + std::string{signature});
    if (value < 0 || world.balance(caller) < value) throw SimError("caller cannot cover value");

    InvokeResult result;
    WorldState snapshot = world;
    Machine machine(world, result.trace, options, caller);
    try {
        machine.move_value(caller, target, value);
        Frame fr = machine.make_frame(target, caller, value, false, 0);
        machine.trace(fr, (f->is_fallback() ? std::string{"fallback"} : "call " + f->signature()) + " from " +
                              caller.to_string() + " value " + value.str() + " args (" + join_values(args) + ")");
        Value r = machine.run_function(fr, *f, args);
        machine.trace(fr, "return " + r.to_string());
        result.outcome = success(std::move(r));
    } catch (const RevertSignal& r) {
        world = std::move(snapshot);
        result.outcome = failure(TxOutcome::Kind::kReverted, r.reason);
    } catch (const BudgetSignal&) {
        world = std::move(snapshot);
        result.outcome = failure(TxOutcome::Kind::kStepBudgetExhausted, {});
    } catch (const UnsupportedSignal& u) {
        world = std::move(snapshot);
        result.outcome = failure(TxOutcome::Kind::kUnsupported, u.what);
    }
    return result;
}

}  // namespace dosscan::sim
