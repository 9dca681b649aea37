#include "cli.hpp"

#include "blockcerts/attack.hpp"
#include "blockcerts/attestation.hpp"
#include "blockcerts/credential.hpp"
#include "blockcerts/errors.hpp"
#include "blockcerts/hardened.hpp"
#include "blockcerts/issuance.hpp"
#include "blockcerts/ledger.hpp"
#include "blockcerts/registry.hpp"
#include "blockcerts/verifier.hpp"

#include "CLI11.hpp"

#include <nlohmann/json.hpp>

#include <chrono>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace blockcerts::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr EpochSeconds kDay = 24 * 60 * 60;
constexpr std::string_view kDemoCaName = "Demo Accreditation Authority";

class UsageError : public Error {
public:
    using Error::Error;
};

std::string read_text(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw UsageError("cannot read " + path.string());
    }
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

json read_json(const fs::path& path) {
    try {
        return json::parse(read_text(path));
    } catch (const json::parse_error& e) {
        throw ParseError(path.string() + ": " + e.what());
    }
}

void write_text(const fs::path& path, const std::string& text) {
    if (path.has_parent_path()) {
        fs::create_directories(path.parent_path());
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out << text;
    if (!out) {
        throw Error("cannot write " + path.string());
    }
}

void write_json(const fs::path& path, const json& j) { write_text(path, j.dump(2) + "\n"); }

ProfileRegistry open_registry(const WorkspaceConfig& config) {
    return ProfileRegistry(std::make_shared<DirectoryWebHost>(config.registry_root));
}

TrustStore open_trust_store(const WorkspaceConfig& config) {
    if (config.trust_store_path && fs::exists(*config.trust_store_path)) {
        return TrustStore::load(*config.trust_store_path);
    }
    return TrustStore{};
}

Keypair load_keypair(const fs::path& path) { return keypair_from_json(read_json(path)); }

void substitute(json& node, const std::map<std::string, std::string>& vars) {
    if (node.is_string()) {
        std::string s = node.get<std::string>();
        for (const auto& [key, value] : vars) {
            for (auto pos = s.find(key); pos != std::string::npos; pos = s.find(key, pos + value.size())) {
                s.replace(pos, key.size(), value);
            }
        }
        node = s;
    } else if (node.is_structured()) {
        for (auto& child : node) {
            substitute(child, vars);
        }
    }
}

std::string zero_pad(std::size_t i, int width) {
    std::ostringstream s;
    s << std::setw(width) << std::setfill('0') << i;
    return s.str();
}

std::optional<ChainAddress> try_address(const std::optional<std::string>& s) {
    if (!s) {
        return std::nullopt;
    }
    try {
        return ChainAddress::parse(*s);
    } catch (const ParseError&) {
        return std::nullopt;
    }
}

// ---- commands -------------------------------------------------------------

int cmd_keygen(const std::optional<std::string>& seed_hex, const fs::path& out_path, std::ostream& out) {
    Keypair kp;
    if (seed_hex) {
        const Bytes seed = from_hex(*seed_hex);
        kp = generate_keypair(std::span<const std::uint8_t>(seed));
    } else {
        kp = generate_keypair();
    }
    write_json(out_path, to_json(kp));
    out << address_of(kp).hex() << '\n';
    return kExitOk;
}

struct InitIssuerArgs {
    std::string name, url, email, profile_url, revocation_url;
    std::optional<std::string> image;
    fs::path key_path;
    std::optional<fs::path> attestation_path;
    std::optional<EpochSeconds> key_created;
};

int cmd_init_issuer(const InitIssuerArgs& args, const WorkspaceConfig& config, std::ostream& out) {
    const Keypair kp = load_keypair(args.key_path);
    const IssuerIdentity identity{args.name, args.url, args.email, args.profile_url, args.revocation_url, args.image};
    IssuerProfileDocument doc = make_issuer_profile(identity, address_of(kp), args.key_created.value_or(config.now()));
    if (args.attestation_path) {
        doc.attestation = attestation_from_json(read_json(*args.attestation_path));
    }
    ProfileRegistry registry = open_registry(config);
    registry.publish(args.profile_url, doc);
    try {
        registry.resolve_revocations(args.revocation_url);
    } catch (const UnreachableUrl&) {
        registry.publish(args.revocation_url, RevocationList{});
    }
    out << "published issuer profile at " << args.profile_url << " (key " << address_of(kp).hex() << ")\n";
    return kExitOk;
}

int cmd_publish(const std::string& url, const fs::path& file, const std::optional<fs::path>& attestation,
                const WorkspaceConfig& config, std::ostream& out) {
    const json doc = read_json(file);
    ProfileRegistry registry = open_registry(config);
    if (doc.contains("revokedAssertions")) {
        registry.publish(url, revocation_list_from_json(doc));
        out << "published revocation list at " << url << '\n';
        return kExitOk;
    }
    IssuerProfileDocument profile = profile_from_json(doc);
    if (attestation) {
        profile.attestation = attestation_from_json(read_json(*attestation));
    }
    registry.publish(url, profile);
    out << "published issuer profile at " << url << '\n';
    return kExitOk;
}

struct AttestArgs {
    fs::path ca_key;
    std::string ca_name, subject_name, subject_url, subject_address;
    EpochSeconds valid_from = 0, valid_to = 0;
    fs::path out;
};

int cmd_attest(const AttestArgs& args, std::ostream& out) {
    const Keypair ca = load_keypair(args.ca_key);
    const IdentityAttestation a =
        issue_attestation(ca, args.ca_name,
                          SubjectIdentity{args.subject_name, args.subject_url, ChainAddress::parse(args.subject_address)},
                          args.valid_from, args.valid_to);
    write_json(args.out, to_json(a));
    out << "attestation for " << args.subject_url << " written to " << args.out.string() << '\n';
    return kExitOk;
}

int cmd_trust(const std::string& name, const fs::path& key_path, const WorkspaceConfig& config, std::ostream& out) {
    if (!config.trust_store_path) {
        throw UsageError("no trust store path configured (set trustStore in --config)");
    }
    TrustStore store = open_trust_store(config);
    const Keypair kp = load_keypair(key_path);
    store.add(TrustAnchor{name, kp.public_key});
    store.save(*config.trust_store_path);
    out << "trusted '" << name << "' (" << store.anchors().size() << " anchor(s))\n";
    return kExitOk;
}

int cmd_issue(const fs::path& template_path, const fs::path& recipients_path, const fs::path& key_path,
              const fs::path& out_dir, const WorkspaceConfig& config, std::ostream& out) {
    const json tmpl = read_json(template_path);
    const json recipients = read_json(recipients_path);
    if (!recipients.is_array() || recipients.empty()) {
        throw UsageError("recipients file must be a non-empty JSON array");
    }
    const Keypair issuer = load_keypair(key_path);
    const EpochSeconds now = config.now();

    std::vector<BlockcertsCertificate> certs;
    for (std::size_t i = 0; i < recipients.size(); ++i) {
        const json& r = recipients[i];
        json doc = tmpl;
        doc.erase("receipt");
        std::map<std::string, std::string> vars = {
            {"{{index}}", std::to_string(i)},
            {"{{recipient.id}}", r.value("id", "")},
            {"{{recipient.name}}", r.value("name", "")},
        };
        substitute(doc, vars);
        json& assertion = doc["assertion"];
        assertion["recipient"] = r;
        assertion["issuedOn"] = now;
        const std::string tmpl_id = tmpl.at("assertion").value("id", "");
        if (tmpl_id.find("{{") == std::string::npos) {
            assertion["id"] = tmpl_id + "/" + std::to_string(i);
        }
        BlockcertsCertificate cert = certificate_from_json(doc);
        if (const auto violations = validate(cert); !violations.empty()) {
            std::string msg = "certificate for recipient " + std::to_string(i) + " is invalid:";
            for (const auto& v : violations) {
                msg += " " + v.field + " (" + v.rule + ")";
            }
            throw UsageError(msg);
        }
        certs.push_back(std::move(cert));
    }

    const auto& first = certs.front().assertion.recipient;
    const ChainAddress to =
        try_address(first.id).value_or(try_address(first.public_key).value_or(address_of(issuer)));

    SimulatedLedger ledger = SimulatedLedger::open(config.ledger_path);
    const IssuedBatch batch = issue_batch(std::move(certs), issuer, to, ledger, now);

    fs::create_directories(out_dir);
    for (std::size_t i = 0; i < batch.certificates.size(); ++i) {
        const fs::path file = out_dir / ("cert-" + zero_pad(i, 3) + ".json");
        write_text(file, serialize_certificate(batch.certificates[i]));
        out << file.string() << '\n';
    }
    out << "anchored " << batch.certificates.size() << " certificate(s) in transaction "
        << batch.transaction.transaction_id << '\n';
    return kExitOk;
}

int cmd_verify(const fs::path& cert_path, const std::string& mode, const std::string& format,
               const WorkspaceConfig& config, std::ostream& out) {
    const BlockcertsCertificate cert = parse_certificate(read_text(cert_path));
    const SimulatedLedger ledger = SimulatedLedger::open(config.ledger_path);
    const ProfileRegistry registry = open_registry(config);
    const EpochSeconds now = config.now();
    const VerificationReport report = mode == "hardened"
                                          ? verify_hardened(cert, ledger, registry, open_trust_store(config), now)
                                          : verify(cert, ledger, registry, now);
    out << render_report(report, format == "json" ? ReportFormat::json : ReportFormat::human);
    return report.valid() ? kExitOk : kExitInvalid;
}

int cmd_revoke(const std::string& assertion_id, const std::string& list_ref, const std::optional<std::string>& reason,
               const WorkspaceConfig& config, std::ostream& out) {
    const bool is_url = list_ref.find("://") != std::string::npos;
    RevocationList list;
    ProfileRegistry registry = open_registry(config);
    if (is_url) {
        try {
            list = registry.resolve_revocations(list_ref);
        } catch (const UnreachableUrl&) {
        }
    } else if (fs::exists(list_ref)) {
        list = revocation_list_from_json(read_json(list_ref));
    }

    const bool added = list.revoke(assertion_id, reason);
    if (is_url) {
        registry.publish(list_ref, list);
    } else {
        write_json(list_ref, to_json(list));
    }
    out << (added ? "revoked " : "already revoked ") << assertion_id << " (" << list.revoked_assertions.size()
        << " entr" << (list.revoked_assertions.size() == 1 ? "y" : "ies") << ")\n";
    return kExitOk;
}

BadgeClass default_badge() {
    BadgeClass b;
    b.id = "urn:badge:msc-computer-engineering";
    b.type = "BadgeClass";
    b.name = "Master of Science in Computer Engineering";
    b.description = "Second-cycle degree awarded on completion of 120 ECTS credits.";
    b.image = "data:image/png;base64,iVBORw0KGgo=";
    b.criteria = "Completion of all required courses and a final thesis.";
    return b;
}

int cmd_attack_demo(const fs::path& victim_path, const fs::path& out_dir, const std::optional<std::string>& seed_hex,
                    const WorkspaceConfig& config, std::ostream& out) {
    if (!fs::exists(victim_path)) {
        throw UsageError("victim fixture not found: " + victim_path.string());
    }
    const json fixture = read_json(victim_path);
    const VictimIdentity victim = victim_from_json(fixture);
    const EpochSeconds now = config.now();

    Bytes seed;
    if (seed_hex) {
        seed = from_hex(*seed_hex);
    } else {
        const Keypair random = generate_keypair();
        seed.assign(random.private_key.begin(), random.private_key.end());
    }
    const auto keypair_for = [&](std::string_view label) {
        Bytes material = seed;
        material.insert(material.end(), label.begin(), label.end());
        return generate_keypair(std::span<const std::uint8_t>(material));
    };

    fs::create_directories(out_dir);
    SimulatedLedger ledger;
    ProfileRegistry registry(std::make_shared<DirectoryWebHost>(out_dir / "hosted"));

    // The genuine institution: CA-attested key, published profile, empty revocation list.
    const Keypair ca = keypair_for("demo-ca");
    const Keypair victim_key = keypair_for("victim-issuer");
    const std::string real_revocations = victim.profile_url.substr(0, victim.profile_url.rfind('/') + 1) +
                                         "revocations.json";
    IssuerProfileDocument real = make_issuer_profile(
        IssuerIdentity{victim.name, victim.url, victim.email, victim.profile_url, real_revocations, std::nullopt},
        address_of(victim_key), now - 30 * kDay);
    real.attestation = issue_attestation(ca, std::string(kDemoCaName),
                                         SubjectIdentity{victim.name, victim.profile_url, address_of(victim_key)},
                                         now - 365 * kDay, now + 365 * kDay);
    registry.publish(victim.profile_url, real);
    registry.publish(real_revocations, RevocationList{});

    TrustStore trust;
    trust.add(TrustAnchor{std::string(kDemoCaName), ca.public_key});

    RecipientProfile recipient;
    if (const auto it = fixture.find("recipient"); it != fixture.end()) {
        recipient.id = it->value("id", "");
        recipient.type = it->value("type", "id");
        if (it->contains("name")) {
            recipient.name = it->at("name").get<std::string>();
        }
    }
    if (recipient.id.empty()) {
        recipient.id = address_of(keypair_for("recipient-wallet")).hex();
        recipient.type = "id";
    }
    BadgeClass badge = default_badge();
    if (const auto it = fixture.find("badge"); it != fixture.end()) {
        badge.name = it->value("name", badge.name);
        badge.description = it->value("description", badge.description);
        badge.criteria = it->value("criteria", badge.criteria);
    }

    ForgeOptions options;
    options.seed = seed;
    const ForgeryScenario scenario = forge(victim, recipient, badge, registry, ledger, now, options);
    const VerificationReport baseline = verify(scenario.forged_certificate, ledger, registry, now);
    const VerificationReport hardened = verify_hardened(scenario.forged_certificate, ledger, registry, trust, now);
    const std::string summary = report_differential(scenario, baseline, hardened);

    write_text(out_dir / "forged-certificate.json", serialize_certificate(scenario.forged_certificate));
    write_text(out_dir / "baseline-report.json", render_report(baseline, ReportFormat::json));
    write_text(out_dir / "hardened-report.json", render_report(hardened, ReportFormat::json));
    write_text(out_dir / "differential.txt", summary);
    trust.save(out_dir / "trust-store.json");
    std::string ledger_lines;
    for (const auto& tx : ledger.transactions()) {
        ledger_lines += to_json(tx).dump() + "\n";
    }
    write_text(out_dir / "ledger.jsonl", ledger_lines);

    out << summary;
    return baseline.valid() && !hardened.valid() ? kExitOk : kExitInvalid;
}

fs::path resolve_relative(const fs::path& base, const fs::path& p) { return p.is_absolute() ? p : base / p; }

} // namespace

EpochSeconds WorkspaceConfig::now() const {
    if (clock_override) {
        return *clock_override;
    }
    return std::chrono::duration_cast<std::chrono::seconds>(std::chrono::system_clock::now().time_since_epoch())
        .count();
}

WorkspaceConfig load_config(const fs::path& path) {
    const json j = read_json(path);
    const fs::path base = path.has_parent_path() ? path.parent_path() : fs::path(".");
    WorkspaceConfig c;
    try {
        c.ledger_path = resolve_relative(base, j.value("ledger", "ledger.jsonl"));
        c.registry_root = resolve_relative(base, j.value("registry", "hosted"));
        if (j.contains("trustStore")) {
            c.trust_store_path = resolve_relative(base, j.at("trustStore").get<std::string>());
        }
        if (j.contains("clock")) {
            c.clock_override = j.at("clock").get<EpochSeconds>();
        }
    } catch (const json::exception& e) {
        throw ParseError(path.string() + ": " + e.what());
    }
    return c;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Blockchain-anchored academic certificates: issue, verify, revoke, and the impersonation demo"};
    app.require_subcommand(1);

    std::optional<std::string> config_path;
    std::optional<std::string> seed_hex;
    std::optional<EpochSeconds> clock;
    app.add_option("--config", config_path, "Workspace config JSON");
    app.add_option("--seed", seed_hex, "Hex seed for deterministic keys");
    app.add_option("--clock", clock, "Override the current time (epoch seconds)");

    std::string out_path;

    auto* keygen = app.add_subcommand("keygen", "Generate an ed25519 keypair and print its chain address");
    keygen->add_option("--out", out_path, "Keypair JSON output path")->required();

    InitIssuerArgs init;
    std::string init_key, init_attestation;
    auto* init_issuer = app.add_subcommand("init-issuer", "Publish a hosted issuer profile for a keypair");
    init_issuer->add_option("--name", init.name)->required();
    init_issuer->add_option("--url", init.url)->required();
    init_issuer->add_option("--email", init.email)->required();
    init_issuer->add_option("--profile-url", init.profile_url)->required();
    init_issuer->add_option("--revocation-url", init.revocation_url)->required();
    init_issuer->add_option("--key", init_key, "Issuer keypair JSON")->required();
    init_issuer->add_option("--attestation", init_attestation, "Attestation JSON to embed");
    init_issuer->add_option("--key-created", init.key_created, "Key creation time (default: now)");

    std::string pub_url, pub_file, pub_attestation;
    auto* publish = app.add_subcommand("publish", "Publish a profile or revocation list JSON at a URL");
    publish->add_option("--url", pub_url)->required();
    publish->add_option("--file", pub_file)->required();
    publish->add_option("--attestation", pub_attestation, "Attestation JSON to embed in a profile");

    AttestArgs attest_args;
    std::string attest_key;
    auto* attest = app.add_subcommand("attest", "Issue a CA identity attestation for an issuer");
    attest->add_option("--ca-key", attest_key)->required();
    attest->add_option("--ca-name", attest_args.ca_name)->required();
    attest->add_option("--subject-name", attest_args.subject_name)->required();
    attest->add_option("--subject-url", attest_args.subject_url, "Issuer profile URL")->required();
    attest->add_option("--subject-address", attest_args.subject_address, "Issuer key address")->required();
    attest->add_option("--valid-from", attest_args.valid_from)->required();
    attest->add_option("--valid-to", attest_args.valid_to)->required();
    attest->add_option("--out", out_path)->required();

    std::string trust_name, trust_key;
    auto* trust = app.add_subcommand("trust", "Add a CA public key to the workspace trust store");
    trust->add_option("--name", trust_name)->required();
    trust->add_option("--key", trust_key, "CA keypair JSON")->required();

    std::string tmpl_path, recipients_path, issuer_key;
    auto* issue = app.add_subcommand("issue", "Issue a batch of certificates anchored in one transaction");
    issue->add_option("--template", tmpl_path)->required();
    issue->add_option("--recipients", recipients_path, "JSON array of recipient profiles")->required();
    issue->add_option("--issuer-key", issuer_key)->required();
    issue->add_option("--out", out_path, "Output directory")->required();

    std::string cert_path, mode = "baseline", format = "human";
    auto* verify_cmd = app.add_subcommand("verify", "Verify a certificate; exit 0 iff valid");
    verify_cmd->add_option("--cert", cert_path)->required();
    verify_cmd->add_option("--mode", mode)->check(CLI::IsMember({"baseline", "hardened"}));
    verify_cmd->add_option("--format", format)->check(CLI::IsMember({"human", "json"}));

    std::string revoke_id, revoke_list;
    std::optional<std::string> revoke_reason;
    auto* revoke = app.add_subcommand("revoke", "Add an assertion id to a revocation list");
    revoke->add_option("--id", revoke_id)->required();
    revoke->add_option("--list", revoke_list, "Revocation list file path or URL")->required();
    revoke->add_option("--reason", revoke_reason);

    std::string victim_path;
    auto* demo = app.add_subcommand("attack-demo", "Reproduce the issuer impersonation forgery");
    demo->add_option("--victim", victim_path, "Victim identity fixture JSON")->required();
    demo->add_option("--out", out_path, "Output directory")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        WorkspaceConfig config = config_path ? load_config(*config_path) : WorkspaceConfig{};
        if (clock) {
            config.clock_override = clock;
        }

        if (keygen->parsed()) {
            return cmd_keygen(seed_hex, out_path, out);
        }
        if (init_issuer->parsed()) {
            init.key_path = init_key;
            if (!init_attestation.empty()) {
                init.attestation_path = init_attestation;
            }
            return cmd_init_issuer(init, config, out);
        }
        if (publish->parsed()) {
            return cmd_publish(pub_url, pub_file,
                               pub_attestation.empty() ? std::nullopt : std::optional<fs::path>(pub_attestation), config,
                               out);
        }
        if (attest->parsed()) {
            attest_args.ca_key = attest_key;
            attest_args.out = out_path;
            return cmd_attest(attest_args, out);
        }
        if (trust->parsed()) {
            return cmd_trust(trust_name, trust_key, config, out);
        }
        if (issue->parsed()) {
            return cmd_issue(tmpl_path, recipients_path, issuer_key, out_path, config, out);
        }
        if (verify_cmd->parsed()) {
            return cmd_verify(cert_path, mode, format, config, out);
        }
        if (revoke->parsed()) {
            return cmd_revoke(revoke_id, revoke_list, revoke_reason, config, out);
        }
        if (demo->parsed()) {
            return cmd_attack_demo(victim_path, out_path, seed_hex, config, out);
        }
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitUsage;
}

} // namespace blockcerts::cli
