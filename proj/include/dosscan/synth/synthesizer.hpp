// Copyright 2026 The dosscan Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include <dosscan/detect/detector.hpp>
#include <dosscan/frontend/ast.hpp>

namespace dosscan::synth {

using Wei = boost::multiprecision::cpp_int;

//! A target or entry function whose parameters cannot be filled with defaults.
class SynthesisError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

//! Default argument for one parameter.
enum class ArgKind {
    kAttackerAddress,  // address(this) of the calling participant
    kInteger,          // 1
    kBool,             // true
};

[[nodiscard]] std::string_view render_arg(ArgKind kind) noexcept;

//! Argument kinds for `params`; throws SynthesisError for other types.
[[nodiscard]] std::vector<ArgKind> default_args(const std::vector<frontend::Parameter>& params,
                                                std::string_view what);

struct EntryRoute {
    enum class Kind { kDirectExternal, kViaOwner, kInternalHarness };

    Kind kind{Kind::kDirectExternal};
    std::string owner_var;                     // ViaOwner
    std::optional<std::string> public_caller;  // InternalHarness; nullopt = synthetic wrapper

    //! "DirectExternal", "ViaOwner", "InternalHarness"
    [[nodiscard]] std::string_view variant_name() const noexcept;
    //! "DirectExternal", "ViaOwner(owner)", "InternalHarness(run())", "InternalHarness(wrapper)"
    [[nodiscard]] std::string to_string() const;

    bool operator==(const EntryRoute&) const = default;
};

[[nodiscard]] std::optional<EntryRoute::Kind> parse_route_kind(std::string_view variant_name) noexcept;

//! The route dictated by a finding's accessibility.
[[nodiscard]] EntryRoute::Kind route_kind_for(const detect::Accessibility& a) noexcept;

struct RegistrationStep {
    std::string function_name;       // empty for the fallback
    std::string function_signature;  // "()" for the fallback
    std::vector<ArgKind> args;
    Wei attached_value{0};

    bool operator==(const RegistrationStep&) const = default;
};

//! Where oracle-mode injection may place a participant.
struct InjectionSlot {
    enum class Kind {
        kAddressArray,    // address[] : push
        kStructArray,     // S[] with an address field : push
        kAddressMapping,  // mapping(address => T) : set entry
    };
    Kind kind{Kind::kAddressArray};
    std::string var;

    bool operator==(const InjectionSlot&) const = default;
};

struct AttackPlan {
    detect::PotentialFinding finding;
    std::string target_contract;
    std::string target_function_signature;
    EntryRoute route;
    std::vector<RegistrationStep> registration;

    // What attack() calls on the target: the vulnerable function itself, its
    // public caller, or the synthetic wrapper.
    std::string entry_name;       // empty for the fallback
    std::string entry_signature;  // "()" for the fallback
    std::vector<ArgKind> entry_args;
    std::optional<std::string> harness_source;  // wrapper function text, simulator copy only

    // Used when registration is empty.
    std::vector<InjectionSlot> injection_slots;
    bool payee_from_caller{false};  // the call target is a parameter, msg.sender or the guarded owner

    std::string attacker_name;
    std::string attacker_source;
    std::string honest_name;
    std::string honest_source;

    //! Attacker_<Contract>_<function>.sol
    [[nodiscard]] std::string attacker_file_name() const;
};

//! One-hop search for a function through which a participant can place its
//! own address into state the vulnerable site reads.
[[nodiscard]] std::vector<RegistrationStep> discover_registration(const detect::PotentialFinding& finding,
                                                                  const frontend::SourceUnit& unit);

//! State variables read by the site (plus its enclosing loop) that injection can extend.
[[nodiscard]] std::vector<InjectionSlot> injection_slots(const detect::PotentialFinding& finding,
                                                         const frontend::SourceUnit& unit);

[[nodiscard]] AttackPlan synthesize_attacker(const detect::PotentialFinding& finding,
                                             const frontend::SourceUnit& unit);

//! Wei attached to payable registration calls.
[[nodiscard]] Wei registration_value();

}  // namespace dosscan::synth
