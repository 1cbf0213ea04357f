// Copyright 2026 The dosscan Authors
// SPDX-License-Identifier: Apache-2.0

#include <dosscan/synth/synthesizer.hpp>

#include <algorithm>
#include <set>

#include <dosscan/frontend/ast_walk.hpp>

namespace dosscan::synth {

using namespace frontend;
using detect::Accessibility;
using detect::PotentialFinding;

std::string_view render_arg(ArgKind kind) noexcept {
    switch (kind) {
        case ArgKind::kAttackerAddress:
            return "address(this)";
        case ArgKind::kInteger:
            return "1";
        case ArgKind::kBool:
            return "true";
    }
    return "?";
}

std::vector<ArgKind> default_args(const std::vector<Parameter>& params, std::string_view what) {
    std::vector<ArgKind> out;
    for (const auto& p : params) {
        if (p.type.is_address()) {
            out.push_back(ArgKind::kAttackerAddress);
        } else if (p.type.is_integer()) {
            out.push_back(ArgKind::kInteger);
        } else if (p.type.is_bool()) {
            out.push_back(ArgKind::kBool);
        } else {
            throw SynthesisError("cannot populate parameter of type " + p.type.text() + " in " + std::string{what});
        }
    }
    return out;
}

std::string_view EntryRoute::variant_name() const noexcept {
    switch (kind) {
        case Kind::kDirectExternal:
            return "DirectExternal";
        case Kind::kViaOwner:
            return "ViaOwner";
        case Kind::kInternalHarness:
            return "InternalHarness";
    }
    return "?";
}

std::string EntryRoute::to_string() const {
    switch (kind) {
        case Kind::kDirectExternal:
            return "DirectExternal";
        case Kind::kViaOwner:
            return "ViaOwner(" + owner_var + ")";
        case Kind::kInternalHarness:
            return "InternalHarness(" + public_caller.value_or("wrapper") + ")";
    }
    return "?";
}

std::optional<EntryRoute::Kind> parse_route_kind(std::string_view name) noexcept {
    if (name == "DirectExternal") return EntryRoute::Kind::kDirectExternal;
    if (name == "ViaOwner") return EntryRoute::Kind::kViaOwner;
    if (name == "InternalHarness") return EntryRoute::Kind::kInternalHarness;
    return std::nullopt;
}

EntryRoute::Kind route_kind_for(const Accessibility& a) noexcept {
    switch (a.kind) {
        case Accessibility::Kind::kExternallyCallable:
            return EntryRoute::Kind::kDirectExternal;
        case Accessibility::Kind::kGuardedOwnerOnly:
            return EntryRoute::Kind::kViaOwner;
        case Accessibility::Kind::kInternalOnly:
            return EntryRoute::Kind::kInternalHarness;
    }
    return EntryRoute::Kind::kDirectExternal;
}

Wei registration_value() { return Wei{"1000000000000000000"}; }

std::string AttackPlan::attacker_file_name() const {
    return "Attacker_" + target_contract + "_" + (finding.function_name.empty() ? "fallback" : finding.function_name) +
           ".sol";
}

namespace {

    struct SiteContext {
        const ContractDecl* contract{nullptr};
        const FunctionDecl* function{nullptr};
        const Stmt* site_stmt{nullptr};
        const Expr* site_expr{nullptr};
        const Stmt* loop{nullptr};  // innermost loop around the site
        const Expr* call{nullptr};  // the external call expression
    };

    bool same_span(const SourceSpan& a, const SourceSpan& b) { return a.begin == b.begin && a.end == b.end; }
    bool contains(const SourceSpan& outer, const SourceSpan& inner) {
        return outer.begin <= inner.begin && inner.end <= outer.end;
    }

    SiteContext locate(const PotentialFinding& finding, const SourceUnit& unit) {
        SiteContext ctx;
        ctx.contract = unit.find_contract(finding.contract_name);
        if (!ctx.contract) throw SynthesisError("unknown contract " + finding.contract_name);
        ctx.function = detect::find_function(*ctx.contract, finding.function_signature);
        if (!ctx.function || !ctx.function->body) throw SynthesisError("unknown function " + finding.function_signature);
        walk_block(
            *ctx.function->body,
            [&](const Stmt& s) {
                if (!ctx.site_stmt && !ctx.site_expr && same_span(s.span, finding.site) &&
                    (s.as<IfStmt>() || s.as<ForStmt>() || s.as<WhileStmt>())) {
                    ctx.site_stmt = &s;
                }
                if ((s.as<ForStmt>() || s.as<WhileStmt>()) && contains(s.span, finding.site)) {
                    if (!ctx.loop || contains(ctx.loop->span, s.span)) ctx.loop = &s;
                }
            },
            [&](const Expr& e) {
                if (!ctx.site_stmt && !ctx.site_expr && same_span(e.span, finding.site) && e.as<BuiltinGuard>()) {
                    ctx.site_expr = &e;
                }
                if (!ctx.call && same_span(e.span, finding.call_site) && e.as<Call>()) ctx.call = &e;
            });
        if (!ctx.site_stmt && !ctx.site_expr) throw SynthesisError("site not found in " + finding.function_signature);
        return ctx;
    }

    template <class F>
    void visit_site_exprs(const SiteContext& ctx, F&& f) {
        auto on_stmt = [](const Stmt&) {};
        if (ctx.site_stmt) walk_stmt(*ctx.site_stmt, on_stmt, f);
        if (ctx.site_expr) walk_expr(*ctx.site_expr, f);
        if (ctx.loop) walk_stmt(*ctx.loop, on_stmt, f);
    }

    //! State variables the site (or its loop) reads, in declaration order.
    std::vector<const StateVarDecl*> site_reads(const SiteContext& ctx) {
        std::set<std::string> names;
        visit_site_exprs(ctx, [&](const Expr& e) {
            if (const auto* id = e.as<Identifier>()) names.insert(id->name);
        });
        std::vector<const StateVarDecl*> out;
        for (const auto& sv : ctx.contract->state_vars) {
            if (names.count(sv.name)) out.push_back(&sv);
        }
        return out;
    }

    const std::string* root_var(const Expr& e) {
        const Expr* cur = &e;
        while (true) {
            if (const auto* id = cur->as<Identifier>()) return &id->name;
            if (const auto* ix = cur->as<IndexAccess>()) {
                cur = &*ix->base;
            } else if (const auto* ma = cur->as<MemberAccess>()) {
                cur = &*ma->base;
            } else {
                return nullptr;
            }
        }
    }

    bool sender_derived(const Expr& e, const FunctionDecl& f) {
        bool found = false;
        walk_expr(e, [&](const Expr& x) {
            if (x.as<MsgSender>()) found = true;
            if (const auto* id = x.as<Identifier>()) {
                for (const auto& p : f.params) {
                    if (p.name == id->name && p.type.is_address()) found = true;
                }
            }
        });
        return found;
    }

    bool is_assignment(const std::string& op) {
        return op == "=" || op == "+=" || op == "-=" || op == "*=" || op == "|=";
    }

    //! True if `f` stores a sender-derived address into one of `vars`.
    bool writes_sender_into(const FunctionDecl& f, const std::set<std::string>& vars) {
        if (!f.body) return false;
        bool found = false;
        walk_exprs(*f.body, [&](const Expr& e) {
            if (const auto* call = e.as<Call>()) {
                const auto* ma = call->callee->as<MemberAccess>();
                if (ma && ma->member == "push") {
                    const std::string* root = root_var(*ma->base);
                    if (root && vars.count(*root)) {
                        for (const auto& a : call->args) {
                            if (sender_derived(a, f)) found = true;
                        }
                    }
                }
            } else if (const auto* b = e.as<Binary>()) {
                if (is_assignment(b->op)) {
                    const std::string* root = root_var(*b->lhs);
                    if (root && vars.count(*root) && (sender_derived(*b->lhs, f) || sender_derived(*b->rhs, f))) {
                        found = true;
                    }
                }
            }
        });
        return found;
    }

    bool populatable(const std::vector<Parameter>& params) {
        return std::all_of(params.begin(), params.end(), [](const Parameter& p) {
            return p.type.is_address() || p.type.is_integer() || p.type.is_bool();
        });
    }

    std::vector<RegistrationStep> discover(const SiteContext& ctx, const PotentialFinding& finding,
                                           const SourceUnit& unit) {
        std::set<std::string> vars;
        for (const auto* sv : site_reads(ctx)) vars.insert(sv->name);
        if (vars.empty()) return {};
        const bool via_owner = finding.accessibility.kind == Accessibility::Kind::kGuardedOwnerOnly;

        const FunctionDecl* payable_pick = nullptr;
        const FunctionDecl* plain_pick = nullptr;
        for (const auto& f : ctx.contract->functions) {
            if (f.kind != FunctionKind::kRegular || !f.externally_visible() || &f == ctx.function) continue;
            if (!populatable(f.params) || !writes_sender_into(f, vars)) continue;
            const Accessibility a = detect::classify_accessibility(f, *ctx.contract, &unit);
            if (a.kind == Accessibility::Kind::kGuardedOwnerOnly && !via_owner) continue;
            if (a.kind == Accessibility::Kind::kInternalOnly) continue;
            if (f.is_payable && !payable_pick) payable_pick = &f;
            if (!f.is_payable && !plain_pick) plain_pick = &f;
        }
        if (const FunctionDecl* f = payable_pick ? payable_pick : plain_pick) {
            RegistrationStep step;
            step.function_name = f->name;
            step.function_signature = f->signature();
            step.args = default_args(f->params, f->signature());
            if (f->is_payable) step.attached_value = registration_value();
            return {step};
        }
        const FunctionDecl* fb = find_fallback(*ctx.contract);
        if (fb && fb->is_payable && fb != ctx.function && writes_sender_into(*fb, vars)) {
            RegistrationStep step;
            step.function_signature = std::string{detect::kFallbackSignature};
            step.attached_value = registration_value();
            return {step};
        }
        return {};
    }

    std::vector<InjectionSlot> slots(const SiteContext& ctx, const SourceUnit& unit) {
        std::vector<InjectionSlot> out;
        for (const auto* sv : site_reads(ctx)) {
            const TypeName& t = sv->type;
            if (t.kind == TypeName::Kind::kArray && !t.array_length) {
                const TypeName& el = t.args.at(0);
                if (el.is_address()) {
                    out.push_back({InjectionSlot::Kind::kAddressArray, sv->name});
                } else if (el.kind == TypeName::Kind::kUser) {
                    const StructDecl* s = ctx.contract->find_struct(el.name);
                    for (const auto& c : unit.contracts) {
                        if (!s) s = c.find_struct(el.name);
                    }
                    if (s && std::any_of(s->fields.begin(), s->fields.end(),
                                         [](const Parameter& p) { return p.type.is_address(); })) {
                        out.push_back({InjectionSlot::Kind::kStructArray, sv->name});
                    }
                }
            } else if (t.kind == TypeName::Kind::kMapping && t.args.at(0).is_address()) {
                out.push_back({InjectionSlot::Kind::kAddressMapping, sv->name});
            }
        }
        return out;
    }

    //! The payee is whoever invokes the function: msg.sender, a parameter, or
    //! the owner variable of a guarded function (participants impersonate it).
    bool payee_from_caller(const SiteContext& ctx, const PotentialFinding& finding) {
        if (!ctx.call) return false;
        const bool guarded = finding.accessibility.kind == Accessibility::Kind::kGuardedOwnerOnly;
        const auto* ma = ctx.call->as<Call>()->callee->as<MemberAccess>();
        if (!ma) return false;
        bool found = false;
        walk_expr(*ma->base, [&](const Expr& e) {
            if (e.as<MsgSender>()) found = true;
            if (const auto* id = e.as<Identifier>()) {
                for (const auto& p : ctx.function->params) {
                    if (p.name == id->name) found = true;
                }
                if (guarded && id->name == finding.accessibility.owner_var) found = true;
            }
        });
        return found;
    }

    //! Names of functions `f` calls directly by plain identifier.
    std::set<std::string> direct_callees(const FunctionDecl& f) {
        std::set<std::string> out;
        if (!f.body) return out;
        walk_exprs(*f.body, [&](const Expr& e) {
            if (const auto* call = e.as<Call>()) {
                if (const auto* id = call->callee->as<Identifier>()) out.insert(id->name);
            }
        });
        return out;
    }

    bool reaches(const ContractDecl& c, const FunctionDecl& from, const std::string& target) {
        std::set<std::string> seen;
        std::vector<const FunctionDecl*> work{&from};
        while (!work.empty()) {
            const FunctionDecl* f = work.back();
            work.pop_back();
            for (const auto& name : direct_callees(*f)) {
                if (name == target) return true;
                if (!seen.insert(name).second) continue;
                for (const auto* g : c.find_functions(name)) work.push_back(g);
            }
        }
        return false;
    }

    std::string args_text(const std::vector<ArgKind>& args) {
        std::string out;
        for (std::size_t i = 0; i < args.size(); ++i) {
            if (i) out += ", ";
            out += render_arg(args[i]);
        }
        return out;
    }

    std::string call_line(const std::string& contract, const std::string& name, const std::string& signature,
                          const std::vector<ArgKind>& args, const Wei& value) {
        if (signature == detect::kFallbackSignature) {
            if (value > 0) return "require(_vulnerableAddr.call.value(" + value.str() + ")(\"\"));";
            return "require(_vulnerableAddr.call(\"\"));";
        }
        std::string line = contract + "(_vulnerableAddr)." + name;
        if (value > 0) line += ".value(" + value.str() + ")";
        return line + "(" + args_text(args) + ");";
    }

    std::string participant_source(const AttackPlan& plan, const std::string& name, bool reverting) {
        std::string out;
        out += "pragma solidity ^0.5.0;\n\n";
        out += "contract " + name + " {\n";
        out += "    address payable private _owner;\n";
        out += "    address payable private _vulnerableAddr;\n\n";
        out += "    constructor(address payable target) public payable {\n";
        out += "        _owner = msg.sender;\n";
        out += "        _vulnerableAddr = target;\n";
        for (const auto& step : plan.registration) {
            out += "        " +
                   call_line(plan.target_contract, step.function_name, step.function_signature, step.args,
                             step.attached_value) +
                   "\n";
        }
        out += "    }\n\n";
        out += "    function attack() public {\n";
        out += "        " + call_line(plan.target_contract, plan.entry_name, plan.entry_signature, plan.entry_args, 0) +
               "\n";
        out += "    }\n\n";
        if (reverting) {
            out += "    function() external payable {\n        revert();\n    }\n";
        } else {
            out += "    function() external payable {\n    }\n";
        }
        out += "}\n";
        return out;
    }

}  // namespace

std::vector<RegistrationStep> discover_registration(const PotentialFinding& finding, const SourceUnit& unit) {
    const SiteContext ctx = locate(finding, unit);
    return discover(ctx, finding, unit);
}

std::vector<InjectionSlot> injection_slots(const PotentialFinding& finding, const SourceUnit& unit) {
    const SiteContext ctx = locate(finding, unit);
    return slots(ctx, unit);
}

AttackPlan synthesize_attacker(const PotentialFinding& finding, const SourceUnit& unit) {
    const SiteContext ctx = locate(finding, unit);
    const FunctionDecl& target = *ctx.function;

    AttackPlan plan;
    plan.finding = finding;
    plan.target_contract = finding.contract_name;
    plan.target_function_signature = finding.function_signature;
    plan.route.kind = route_kind_for(finding.accessibility);
    plan.registration = discover(ctx, finding, unit);
    plan.injection_slots = slots(ctx, unit);
    plan.payee_from_caller = payee_from_caller(ctx, finding);

    plan.entry_name = target.name;
    plan.entry_signature = finding.function_signature;
    switch (plan.route.kind) {
        case EntryRoute::Kind::kDirectExternal:
            break;
        case EntryRoute::Kind::kViaOwner:
            plan.route.owner_var = finding.accessibility.owner_var;
            break;
        case EntryRoute::Kind::kInternalHarness: {
            for (const auto& f : ctx.contract->functions) {
                if (f.kind != FunctionKind::kRegular || !f.externally_visible() || &f == &target) continue;
                if (!populatable(f.params)) continue;
                const Accessibility a = detect::classify_accessibility(f, *ctx.contract, &unit);
                if (a.kind != Accessibility::Kind::kExternallyCallable) continue;
                if (!reaches(*ctx.contract, f, target.name)) continue;
                plan.route.public_caller = f.signature();
                plan.entry_name = f.name;
                plan.entry_signature = f.signature();
                break;
            }
            if (!plan.route.public_caller) {
                plan.entry_name = "__harness_" + target.name;
                std::string params;
                std::string forwarded;
                for (std::size_t i = 0; i < target.params.size(); ++i) {
                    if (i) {
                        params += ", ";
                        forwarded += ", ";
                    }
                    const std::string pname = "p" + std::to_string(i);
                    params += target.params[i].type.text() + " " + pname;
                    forwarded += pname;
                }
                plan.harness_source =
                    "function " + plan.entry_name + "(" + params + ") public {\n    " + target.name + "(" + forwarded +
                    ");\n}\n";
                std::string sig = plan.entry_name + "(";
                for (std::size_t i = 0; i < target.params.size(); ++i) {
                    if (i) sig += ",";
                    sig += target.params[i].type.canonical();
                }
                plan.entry_signature = sig + ")";
            }
            break;
        }
    }

    const FunctionDecl* entry = plan.route.public_caller
                                    ? detect::find_function(*ctx.contract, plan.entry_signature)
                                    : &target;
    plan.entry_args = default_args(entry->params, plan.entry_signature);

    plan.attacker_name = "Attacker_" + plan.target_contract;
    plan.honest_name = "Honest_" + plan.target_contract;
    plan.attacker_source = participant_source(plan, plan.attacker_name, true);
    plan.honest_source = participant_source(plan, plan.honest_name, false);
    return plan;
}

}  // namespace dosscan::synth
