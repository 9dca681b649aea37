#include "blockcerts/verifier.hpp"

#include "blockcerts/errors.hpp"

#include <algorithm>
#include <sstream>

namespace blockcerts {

using nlohmann::json;

namespace {

constexpr std::array<std::string_view, kStepCount> kStepNames = {
    "GetTransaction",     "ComputeLocalHash", "FetchRemoteRoot", "CompareHashToReceipt",
    "CheckMerklePath",    "CompareRootToChain", "FetchIssuerProfile", "ParseIssuerKeys",
    "CheckRevocation",    "CheckAuthenticity", "CheckExpiry",
};

StepOutcome pass(std::string detail) { return {true, std::move(detail)}; }
StepOutcome fail(std::string detail) { return {false, std::move(detail)}; }

std::string short_hex(const Digest& d) { return to_hex(d).substr(0, 16) + "..."; }

// Records step outcomes in order; once one fails the rest are skipped.
class StepRunner {
public:
    template <typename Fn>
    void run(StepName name, Fn&& fn) {
        if (failed_) {
            steps_.push_back({name, StepStatus::skipped, "not run: an earlier step failed"});
            return;
        }
        StepOutcome outcome;
        try {
            outcome = fn();
        } catch (const std::exception& e) {
            outcome = fail(e.what());
        }
        failed_ = !outcome.ok;
        steps_.push_back({name, outcome.ok ? StepStatus::passed : StepStatus::failed, std::move(outcome.detail)});
    }

    VerificationReport finish(EpochSeconds now) && {
        VerificationReport report;
        report.steps = std::move(steps_);
        report.verdict = failed_ ? Verdict::invalid : Verdict::valid;
        report.checked_at = now;
        return report;
    }

private:
    std::vector<VerificationStep> steps_;
    bool failed_ = false;
};

} // namespace

std::string_view to_string(StepName s) { return kStepNames[static_cast<std::size_t>(s)]; }

std::string_view to_string(StepStatus s) {
    switch (s) {
    case StepStatus::passed:
        return "passed";
    case StepStatus::failed:
        return "failed";
    case StepStatus::skipped:
        return "skipped";
    }
    return "unknown";
}

std::string_view to_string(Verdict v) { return v == Verdict::valid ? "valid" : "invalid"; }

std::optional<StepName> step_from_string(std::string_view s) {
    for (std::size_t i = 0; i < kStepCount; ++i) {
        if (kStepNames[i] == s) {
            return static_cast<StepName>(i);
        }
    }
    return std::nullopt;
}

std::optional<StepName> VerificationReport::failed_step() const {
    for (const auto& s : steps) {
        if (s.status == StepStatus::failed) {
            return s.name;
        }
    }
    return std::nullopt;
}

const VerificationStep& VerificationReport::step(StepName name) const {
    const auto it = std::find_if(steps.begin(), steps.end(), [&](const VerificationStep& s) { return s.name == name; });
    if (it == steps.end()) {
        throw Error("report has no step " + std::string(to_string(name)));
    }
    return *it;
}

StepOutcome check_profile_key_binding(const AuthenticityContext& ctx) {
    const LedgerTransaction& tx = ctx.transaction;
    const auto t = tx.timestamp;
    std::string last_problem;
    bool address_seen = false;
    for (const ProfileKey& key : ctx.profile.public_keys) {
        if (key.key_address != tx.from_address) {
            continue;
        }
        address_seen = true;
        if (key.created > t) {
            last_problem = "issuer key " + key.key_address.hex() + " was created at " + std::to_string(key.created) +
                           ", after the transaction at " + std::to_string(t);
            continue;
        }
        if (key.expires && t >= *key.expires) {
            last_problem = "issuer key " + key.key_address.hex() + " expired at " + std::to_string(*key.expires) +
                           ", transaction at " + std::to_string(t);
            continue;
        }
        if (key.revoked && t >= *key.revoked) {
            last_problem = "issuer key " + key.key_address.hex() + " was revoked at " + std::to_string(*key.revoked) +
                           ", transaction at " + std::to_string(t);
            continue;
        }
        return pass("transaction signer " + tx.from_address.hex() + " matches a key of the issuer profile valid at " +
                    std::to_string(t));
    }
    if (!address_seen) {
        return fail("transaction signer " + tx.from_address.hex() + " is not among the issuer profile keys");
    }
    return fail(last_problem);
}

VerificationReport run_verification(const BlockcertsCertificate& cert, const AnchorLedger& ledger,
                                    const ProfileResolver& registry, EpochSeconds now,
                                    const AuthenticityCheck& authenticity) {
    StepRunner runner;
    std::optional<LedgerTransaction> tx;
    Digest local_hash{};
    Digest remote_root{};
    std::optional<IssuerProfileDocument> profile;

    runner.run(StepName::GetTransaction, [&] {
        if (!cert.receipt) {
            return fail("certificate carries no receipt");
        }
        tx = ledger.get_transaction(cert.receipt->transaction_id);
        return pass("transaction " + tx->transaction_id + " found, timestamp " + std::to_string(tx->timestamp));
    });
    runner.run(StepName::ComputeLocalHash, [&] {
        local_hash = certificate_hash(cert);
        return pass("local hash " + to_hex(local_hash));
    });
    runner.run(StepName::FetchRemoteRoot, [&] {
        remote_root = tx->payload;
        return pass("anchored root " + to_hex(remote_root));
    });
    runner.run(StepName::CompareHashToReceipt, [&] {
        if (local_hash != cert.receipt->target_hash) {
            return fail("local hash " + short_hex(local_hash) + " differs from receipt target " +
                        short_hex(cert.receipt->target_hash));
        }
        return pass("local hash matches receipt target hash");
    });
    runner.run(StepName::CheckMerklePath, [&] {
        if (!verify_proof(*cert.receipt)) {
            return fail("merkle path does not lead from the target hash to the receipt root");
        }
        return pass(cert.receipt->proof.empty() ? "empty proof: single-certificate batch, target equals root"
                                                : "merkle path of " + std::to_string(cert.receipt->proof.size()) +
                                                      " step(s) is valid");
    });
    runner.run(StepName::CompareRootToChain, [&] {
        if (cert.receipt->merkle_root != remote_root) {
            return fail("receipt root " + short_hex(cert.receipt->merkle_root) + " differs from anchored root " +
                        short_hex(remote_root));
        }
        return pass("receipt root matches the anchored root");
    });
    runner.run(StepName::FetchIssuerProfile, [&] {
        const std::string& url = cert.assertion.badge.issuer.issuer_id;
        profile = registry.resolve_profile(url);
        return pass("issuer profile '" + profile->name + "' fetched from " + url);
    });
    runner.run(StepName::ParseIssuerKeys, [&] {
        if (profile->public_keys.empty()) {
            return fail("issuer profile lists no keys");
        }
        return pass(std::to_string(profile->public_keys.size()) + " issuer key(s) found");
    });
    runner.run(StepName::CheckRevocation, [&] {
        const RevocationList list = registry.resolve_revocations(profile->revocation_list);
        if (const RevokedAssertion* r = list.find(cert.assertion.id)) {
            return fail("certificate " + r->id + " is revoked" + (r->reason ? ": " + *r->reason : std::string()));
        }
        return pass("certificate not in revocation list " + profile->revocation_list);
    });
    runner.run(StepName::CheckAuthenticity,
               [&] { return authenticity(AuthenticityContext{cert, *tx, *profile}); });
    runner.run(StepName::CheckExpiry, [&] {
        const auto& expires = cert.assertion.expires;
        if (!expires) {
            return pass("certificate has no expiry date");
        }
        if (now >= *expires) {
            return fail("certificate expired at " + std::to_string(*expires));
        }
        return pass("certificate valid until " + std::to_string(*expires));
    });

    return std::move(runner).finish(now);
}

VerificationReport verify(const BlockcertsCertificate& cert, const AnchorLedger& ledger,
                          const ProfileResolver& registry, EpochSeconds now) {
    return run_verification(cert, ledger, registry, now, check_profile_key_binding);
}

json to_json(const VerificationReport& report) {
    json steps = json::array();
    for (const auto& s : report.steps) {
        steps.push_back({{"name", to_string(s.name)}, {"status", to_string(s.status)}, {"detail", s.detail}});
    }
    return {{"verdict", to_string(report.verdict)}, {"checkedAt", report.checked_at}, {"steps", std::move(steps)}};
}

VerificationReport report_from_json(const json& j) {
    try {
        VerificationReport report;
        const auto verdict = j.at("verdict").get<std::string>();
        if (verdict != "valid" && verdict != "invalid") {
            throw ParseError("report: unknown verdict " + verdict);
        }
        report.verdict = verdict == "valid" ? Verdict::valid : Verdict::invalid;
        report.checked_at = j.at("checkedAt").get<EpochSeconds>();
        for (const auto& s : j.at("steps")) {
            const auto name = step_from_string(s.at("name").get<std::string>());
            if (!name) {
                throw ParseError("report: unknown step " + s.at("name").get<std::string>());
            }
            const auto status = s.at("status").get<std::string>();
            StepStatus st;
            if (status == "passed") {
                st = StepStatus::passed;
            } else if (status == "failed") {
                st = StepStatus::failed;
            } else if (status == "skipped") {
                st = StepStatus::skipped;
            } else {
                throw ParseError("report: unknown step status " + status);
            }
            report.steps.push_back({*name, st, s.at("detail").get<std::string>()});
        }
        return report;
    } catch (const json::exception& e) {
        throw ParseError(std::string("report: ") + e.what());
    }
}

std::string render_report(const VerificationReport& report, ReportFormat format) {
    if (format == ReportFormat::json) {
        return to_json(report).dump(2) + "\n";
    }
    std::ostringstream out;
    out << "Certificate verification: " << (report.valid() ? "VALID" : "INVALID") << " (checked at "
        << report.checked_at << ")\n";
    for (const auto& s : report.steps) {
        const char* marker = s.status == StepStatus::passed ? "[ OK ]" : s.status == StepStatus::failed ? "[FAIL]" : "[SKIP]";
        out << "  " << marker << ' ' << to_string(s.name);
        for (std::size_t pad = to_string(s.name).size(); pad < 22; ++pad) {
            out << ' ';
        }
        out << s.detail << '\n';
    }
    return out.str();
}

} // namespace blockcerts
