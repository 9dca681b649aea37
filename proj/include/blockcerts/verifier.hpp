#pragma once

#include "blockcerts/bytes.hpp"
#include "blockcerts/credential.hpp"
#include "blockcerts/ledger.hpp"
#include "blockcerts/registry.hpp"

#include <nlohmann/json.hpp>

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace blockcerts {

/// Verification steps in execution order.
enum class StepName {
    GetTransaction,
    ComputeLocalHash,
    FetchRemoteRoot,
    CompareHashToReceipt,
    CheckMerklePath,
    CompareRootToChain,
    FetchIssuerProfile,
    ParseIssuerKeys,
    CheckRevocation,
    CheckAuthenticity,
    CheckExpiry,
};

inline constexpr std::size_t kStepCount = 11;

inline constexpr std::array<StepName, kStepCount> kStepOrder = {
    StepName::GetTransaction,     StepName::ComputeLocalHash,  StepName::FetchRemoteRoot,
    StepName::CompareHashToReceipt, StepName::CheckMerklePath, StepName::CompareRootToChain,
    StepName::FetchIssuerProfile, StepName::ParseIssuerKeys,   StepName::CheckRevocation,
    StepName::CheckAuthenticity,  StepName::CheckExpiry,
};

enum class StepStatus { passed, failed, skipped };
enum class Verdict { valid, invalid };

std::string_view to_string(StepName s);
std::string_view to_string(StepStatus s);
std::string_view to_string(Verdict v);
std::optional<StepName> step_from_string(std::string_view s);

struct VerificationStep {
    StepName name;
    StepStatus status;
    std::string detail;

    bool operator==(const VerificationStep&) const = default;
};

struct VerificationReport {
    std::vector<VerificationStep> steps;
    Verdict verdict = Verdict::invalid;
    EpochSeconds checked_at = 0;

    bool valid() const { return verdict == Verdict::valid; }
    /// First failed step, if any.
    std::optional<StepName> failed_step() const;
    const VerificationStep& step(StepName name) const;

    bool operator==(const VerificationReport&) const = default;
};

/// Everything the authenticity step gets to look at.
struct AuthenticityContext {
    const BlockcertsCertificate& cert;
    const LedgerTransaction& transaction;
    const IssuerProfileDocument& profile;
};

struct StepOutcome {
    bool ok = false;
    std::string detail;
};

using AuthenticityCheck = std::function<StepOutcome(const AuthenticityContext&)>;

/// The hosted-profile key check: the transaction's from-address must equal a
/// published key address, and that key must have been live at the
/// transaction time (created <= t, t < expires, t < revoked).
StepOutcome check_profile_key_binding(const AuthenticityContext& ctx);

/// Runs the eleven steps with the given authenticity check in slot ten. The
/// first failure marks every later step skipped.
VerificationReport run_verification(const BlockcertsCertificate& cert, const AnchorLedger& ledger,
                                    const ProfileResolver& registry, EpochSeconds now,
                                    const AuthenticityCheck& authenticity);

/// Baseline verification: run_verification with check_profile_key_binding.
VerificationReport verify(const BlockcertsCertificate& cert, const AnchorLedger& ledger,
                          const ProfileResolver& registry, EpochSeconds now);

enum class ReportFormat { human, json };

std::string render_report(const VerificationReport& report, ReportFormat format);

nlohmann::json to_json(const VerificationReport& report);
VerificationReport report_from_json(const nlohmann::json& j);

} // namespace blockcerts
