#include "blockcerts/attack.hpp"

#include "blockcerts/errors.hpp"

#include <cctype>
#include <sstream>

namespace blockcerts {

namespace {

Keypair derived_keypair(const std::optional<Bytes>& seed, std::string_view label) {
    if (!seed) {
        return generate_keypair();
    }
    Bytes material = *seed;
    material.insert(material.end(), label.begin(), label.end());
    return generate_keypair(std::span<const std::uint8_t>(material));
}

std::string slug(std::string_view name) {
    std::string out;
    for (const char c : name) {
        if (std::isalnum(static_cast<unsigned char>(c))) {
            out += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
        } else if (!out.empty() && out.back() != '-') {
            out += '-';
        }
    }
    while (!out.empty() && out.back() == '-') {
        out.pop_back();
    }
    return out.empty() ? "issuer" : out;
}

// urn:uuid-shaped identifier derived from the inputs so seeded runs repeat.
std::string assertion_id(const std::string& fake_url, const std::string& recipient_id, std::size_t index) {
    const std::string hex = to_hex(sha256(fake_url + "\n" + recipient_id + "\n" + std::to_string(index)));
    return "urn:uuid:" + hex.substr(0, 8) + "-" + hex.substr(8, 4) + "-" + hex.substr(12, 4) + "-" + hex.substr(16, 4) +
           "-" + hex.substr(20, 12);
}

std::string pad(std::string_view s, std::size_t width) {
    std::string out(s);
    if (out.size() < width) {
        out.append(width - out.size(), ' ');
    }
    return out;
}

} // namespace

std::string default_fake_profile_url(const VictimIdentity& victim) {
    return "https://" + slug(victim.name) + ".github.io/issuer/profile.json";
}

ForgeryScenario forge(const VictimIdentity& victim, const RecipientProfile& recipient, const BadgeClass& badge_template,
                      ProfileRegistry& registry, AnchorLedger& ledger, EpochSeconds timestamp,
                      const ForgeOptions& options) {
    if (options.batch_size == 0) {
        throw EmptyBatch();
    }
    ForgeryScenario s;
    s.victim_name = victim.name;
    s.victim_real_profile_url = victim.profile_url;
    s.fake_profile_url = options.fake_profile_url.value_or(default_fake_profile_url(victim));
    if (s.fake_profile_url == victim.profile_url) {
        throw Error("fake profile URL must differ from the victim's real profile URL");
    }
    const auto slash = s.fake_profile_url.rfind('/');
    s.fake_revocation_url = s.fake_profile_url.substr(0, slash + 1) + "revocations.json";

    // One keypair posing as the university, one for the student.
    s.attacker_keypair = derived_keypair(options.seed, "attacker-issuer");
    const Keypair student = derived_keypair(options.seed, "attacker-recipient");

    const IssuerIdentity fake_identity{victim.name, victim.url, victim.email, s.fake_profile_url,
                                       s.fake_revocation_url, std::nullopt};
    registry.publish(s.fake_profile_url, make_issuer_profile(fake_identity, address_of(s.attacker_keypair), timestamp));
    registry.publish(s.fake_revocation_url, RevocationList{});

    std::vector<BlockcertsCertificate> certs;
    for (std::size_t i = 0; i < options.batch_size; ++i) {
        BlockcertsCertificate cert;
        Assertion& a = cert.assertion;
        a.type = "Assertion";
        a.recipient = recipient;
        if (i > 0) {
            a.recipient.id = recipient.id + "-" + std::to_string(i);
        }
        a.id = assertion_id(s.fake_profile_url, a.recipient.id, i);
        a.badge = badge_template;
        a.badge.issuer = issuer_ref(fake_identity);
        a.issued_on = timestamp;
        cert.signature_lines = std::vector<SignatureLine>{{"Office of the Registrar", victim.name}};
        certs.push_back(std::move(cert));
    }

    ChainAddress to = address_of(student);
    try {
        to = ChainAddress::parse(recipient.id);
    } catch (const ParseError&) {
    }
    IssuedBatch issued = issue_batch(std::move(certs), s.attacker_keypair, to, ledger, timestamp);
    s.anchor_tx = issued.transaction;
    s.batch = std::move(issued.certificates);
    s.forged_certificate = s.batch.front();
    return s;
}

std::string report_differential(const ForgeryScenario& scenario, const VerificationReport& baseline,
                                const VerificationReport& hardened) {
    std::ostringstream out;
    out << "Issuer impersonation scenario\n";
    out << "  victim:              " << scenario.victim_name << '\n';
    out << "  real profile:        " << scenario.victim_real_profile_url << '\n';
    out << "  fake profile:        " << scenario.fake_profile_url << '\n';
    out << "  attacker address:    " << address_of(scenario.attacker_keypair).hex() << '\n';
    out << "  anchor transaction:  " << scenario.anchor_tx.transaction_id << '\n';
    out << "  certificate:         " << scenario.forged_certificate.assertion.id << "\n\n";

    out << pad("STEP", 22) << pad("BASELINE", 10) << "HARDENED\n";
    std::optional<StepName> divergence;
    for (const StepName name : kStepOrder) {
        const auto find = [&](const VerificationReport& r) -> std::string_view {
            for (const auto& s : r.steps) {
                if (s.name == name) {
                    return to_string(s.status);
                }
            }
            return "-";
        };
        const std::string_view b = find(baseline);
        const std::string_view h = find(hardened);
        out << pad(to_string(name), 22) << pad(b, 10) << h;
        if (b != h) {
            out << pad("", 10 - h.size()) << "<-- diverges";
            if (!divergence) {
                divergence = name;
            }
        }
        out << '\n';
    }
    out << '\n';
    out << "baseline verdict: " << to_string(baseline.verdict) << '\n';
    out << "hardened verdict: " << to_string(hardened.verdict) << '\n';

    if (hardened.valid()) {
        out << "\n*** DEFENSE FAILURE: the hardened verifier ACCEPTED the forged certificate ***\n";
    } else if (baseline.valid()) {
        out << "\nForgery accepted by the baseline verifier; rejected by the hardened verifier at "
            << (divergence ? to_string(*divergence) : std::string_view("an unknown step")) << ".\n";
        if (const auto failed = hardened.failed_step()) {
            out << "reason: " << hardened.step(*failed).detail << '\n';
        }
    } else {
        out << "\nForgery rejected by both verifiers";
        if (const auto failed = baseline.failed_step()) {
            out << " (baseline failed at " << to_string(*failed) << ")";
        }
        out << ".\n";
    }
    return out.str();
}

VictimIdentity victim_from_json(const nlohmann::json& j) {
    try {
        return VictimIdentity{j.at("name").get<std::string>(), j.at("url").get<std::string>(),
                              j.at("email").get<std::string>(), j.at("profileUrl").get<std::string>()};
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("victim fixture: ") + e.what());
    }
}

nlohmann::json to_json(const VictimIdentity& v) {
    return {{"name", v.name}, {"url", v.url}, {"email", v.email}, {"profileUrl", v.profile_url}};
}

} // namespace blockcerts
