#include "fixtures.hpp"

#include <atomic>
#include <fstream>
#include <random>
#include <sstream>

namespace fixtures {

Keypair seeded_keypair(std::string_view label) { return generate_keypair(as_bytes(label)); }

IssuerIdentity university_identity(const std::string& base) {
    return IssuerIdentity{
        "University of Example",
        "https://www.university.example",
        "registrar@university.example",
        base + "/issuer/profile.json",
        base + "/issuer/revocations.json",
        std::nullopt,
    };
}

DiplomaSupplement sample_supplement() {
    DiplomaSupplement s;
    s[SupplementSection::holder] = {{"family_name", "Rossi"}, {"given_name", "Maria"}, {"date_of_birth", "1996-04-12"}};
    s[SupplementSection::qualification] = {{"name", "Laurea Magistrale"}, {"field", "Computer Engineering"}};
    s[SupplementSection::level] = {{"level", "Second cycle (EQF 7)"}, {"duration", "2 years, 120 ECTS"}};
    s[SupplementSection::contents_and_results] = {{"Cryptography", "30/30 cum laude, 2021-02-10"},
                                                  {"Distributed Systems", "28/30, 2021-06-22"}};
    s[SupplementSection::function] = {{"access", "Access to third-cycle studies"}};
    s[SupplementSection::issuer] = {{"institution", "University of Example"}};
    s[SupplementSection::national_system] = {{"summary", "Three-cycle system following the Bologna process"}};
    return s;
}

BadgeClass sample_badge(const IssuerIdentity& issuer) {
    BadgeClass b;
    b.id = "urn:badge:msc-computer-engineering";
    b.type = "BadgeClass";
    b.name = "Master of Science in Computer Engineering";
    b.description = "Second-cycle degree awarded on completion of 120 ECTS.";
    b.image = "data:image/png;base64,iVBORw0KGgo=";
    b.criteria = "All required courses passed and thesis defended.";
    b.issuer = issuer_ref(issuer);
    b.issuer.issuer_public_key = "ecdsa-koblitz-pubkey:opaque";
    b.alignment = std::vector<std::string>{"ISCED-F 0613"};
    b.tags = std::vector<std::string>{"engineering", "masters"};
    return b;
}

RecipientProfile sample_recipient(std::string_view label) {
    RecipientProfile r;
    r.id = address_of(seeded_keypair(std::string("recipient/") + std::string(label))).hex();
    r.type = "id";
    r.name = "Maria Rossi " + std::string(label);
    r.email = "student@university.example";
    return r;
}

BlockcertsCertificate sample_certificate(const std::string& assertion_id, const IssuerIdentity& issuer) {
    BlockcertsCertificate c;
    Assertion& a = c.assertion;
    a.id = assertion_id;
    a.type = "Assertion";
    a.recipient = sample_recipient(assertion_id);
    a.badge = sample_badge(issuer);
    a.issued_on = kNow - kDay;
    a.expires = kNow + 3650 * kDay;
    a.evidence = "https://www.university.example/theses/1234";
    a.narrative = "Thesis: Verifiable academic credentials.";
    c.supplement = sample_supplement();
    c.signature_lines = std::vector<SignatureLine>{{"Prof. A. Bianchi", "Rector"}, {"Dr. C. Verdi", "Registrar"}};
    return c;
}

World::World(std::string_view label_, EpochSeconds now_, const std::string& issuer_base)
    : label(label_),
      now(now_),
      ca(seeded_keypair(std::string(label_) + "/ca")),
      issuer_key(seeded_keypair(std::string(label_) + "/issuer")),
      issuer(university_identity(issuer_base)) {
    trust.add(TrustAnchor{ca_name, ca.public_key});
    publish_issuer(true);
}

void World::publish_issuer(bool attested) {
    IssuerProfileDocument doc = make_issuer_profile(issuer, address_of(issuer_key), now - 30 * kDay);
    if (attested) {
        doc.attestation = issue_attestation(ca, ca_name, SubjectIdentity{issuer.name, issuer.profile_url, address_of(issuer_key)},
                                            now - 365 * kDay, now + 365 * kDay);
    }
    registry.publish(issuer.profile_url, doc);
    registry.publish(issuer.revocation_list, RevocationList{});
}

IssuedBatch World::issue(std::size_t n, std::optional<EpochSeconds> at) {
    const std::size_t batch = batches_++;
    std::vector<BlockcertsCertificate> certs;
    for (std::size_t i = 0; i < n; ++i) {
        certs.push_back(sample_certificate(
            "urn:example:" + label + ":" + std::to_string(batch) + ":" + std::to_string(i), issuer));
    }
    const ChainAddress to = ChainAddress::parse(certs.front().assertion.recipient.id);
    return issue_batch(std::move(certs), issuer_key, to, ledger, at.value_or(now - kDay));
}

VerificationReport World::baseline(const BlockcertsCertificate& cert) const {
    return verify(cert, ledger, registry, now);
}

VerificationReport World::hardened(const BlockcertsCertificate& cert) const {
    return verify_hardened(cert, ledger, registry, trust, now);
}

TempDir::TempDir(std::string_view tag) {
    static std::atomic<int> counter{0};
    std::random_device rd;
    path_ = std::filesystem::temp_directory_path() /
            ("blockcerts-" + std::string(tag) + "-" + std::to_string(rd()) + "-" + std::to_string(counter++));
    std::filesystem::create_directories(path_);
}

TempDir::~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
}

std::string read_file(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

} // namespace fixtures
