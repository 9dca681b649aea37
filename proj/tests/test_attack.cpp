#include "blockcerts/attack.hpp"
#include "blockcerts/errors.hpp"

#include "fixtures.hpp"

#include <gtest/gtest.h>

using namespace blockcerts;
using fixtures::kDay;
using fixtures::seeded_keypair;

namespace {

// The genuine institution lives in a World; the attacker shares its ledger
// and hosting but holds none of its keys.
struct Scene {
    explicit Scene(std::string_view label, std::size_t batch_size = 1) : world(label) {
        victim = VictimIdentity{world.issuer.name, world.issuer.url, world.issuer.email, world.issuer.profile_url};
        ForgeOptions opts;
        opts.seed = Bytes{1, 2, 3};
        opts.batch_size = batch_size;
        opts.fake_profile_url = "mock://university-example.pages.example/issuer/profile.json";
        scenario = forge(victim, fixtures::sample_recipient("victim-student"), fixtures::sample_badge(world.issuer),
                         world.registry, world.ledger, world.now - kDay, opts);
    }

    fixtures::World world;
    VictimIdentity victim;
    ForgeryScenario scenario;
};

} // namespace

TEST(Forge, BaselineAcceptsForgedCertificate) {
    Scene s("forge-baseline");
    const auto r = s.world.baseline(s.scenario.forged_certificate);
    EXPECT_TRUE(r.valid()) << render_report(r, ReportFormat::human);
    for (const auto& step : r.steps) {
        EXPECT_EQ(step.status, StepStatus::passed) << to_string(step.name);
    }
}

TEST(Forge, ForgedCertificateImpersonatesVictim) {
    Scene s("forge-shape");
    const auto& issuer = s.scenario.forged_certificate.assertion.badge.issuer;
    EXPECT_EQ(issuer.issuer_name, s.victim.name);
    EXPECT_EQ(issuer.issuer_url, s.victim.url);
    EXPECT_EQ(issuer.issuer_email, s.victim.email);
    EXPECT_EQ(issuer.issuer_id, s.scenario.fake_profile_url);
    EXPECT_NE(issuer.issuer_id, s.victim.profile_url);
    EXPECT_TRUE(validate(s.scenario.forged_certificate).empty());

    const auto fake = s.world.registry.resolve_profile(s.scenario.fake_profile_url);
    EXPECT_EQ(fake.name, s.victim.name);
    EXPECT_FALSE(fake.attestation.has_value());
}

TEST(Forge, AttackerKeyIsAbsentFromRealProfile) {
    Scene s("forge-keys");
    const auto attacker = address_of(s.scenario.attacker_keypair);
    EXPECT_EQ(s.scenario.anchor_tx.from_address, attacker);
    for (const auto& key : s.world.profile().public_keys) {
        EXPECT_NE(key.key_address, attacker);
    }
}

TEST(Forge, HardenedRejectsAtAuthenticityOnly) {
    Scene s("forge-hardened");
    const auto r = s.world.hardened(s.scenario.forged_certificate);
    EXPECT_FALSE(r.valid());
    EXPECT_EQ(r.failed_step(), StepName::CheckAuthenticity);
    for (const StepName n : kStepOrder) {
        if (n == StepName::CheckAuthenticity) {
            break;
        }
        EXPECT_EQ(r.step(n).status, StepStatus::passed) << to_string(n);
    }
}

TEST(Forge, TamperedForgeryFailsEvenBaseline) {
    Scene s("forge-tamper");
    auto cert = s.scenario.forged_certificate;
    cert.assertion.badge.name += " with Honours";
    EXPECT_EQ(s.world.baseline(cert).failed_step(), StepName::CompareHashToReceipt);
}

TEST(Forge, PointingAtRealProfileFailsAuthenticity) {
    Scene s("forge-realprofile");
    // Without a profile of its own the attacker must name the real one, which
    // does not list the attacker key.
    auto certs = std::vector<BlockcertsCertificate>{s.scenario.forged_certificate};
    certs[0].receipt.reset();
    certs[0].assertion.badge.issuer = issuer_ref(s.world.issuer);
    const auto batch = issue_batch(certs, s.scenario.attacker_keypair, address_of(s.scenario.attacker_keypair),
                                   s.world.ledger, s.world.now - kDay + 1);
    EXPECT_EQ(s.world.baseline(batch.certificates[0]).failed_step(), StepName::CheckAuthenticity);
}

TEST(Forge, FakeProfileListingVictimKeyFailsAuthenticity) {
    Scene s("forge-victimkey");
    auto fake = s.world.registry.resolve_profile(s.scenario.fake_profile_url);
    fake.public_keys = {ProfileKey{address_of(s.world.issuer_key), s.world.now - 30 * kDay, std::nullopt, std::nullopt}};
    s.world.registry.publish(s.scenario.fake_profile_url, fake);
    EXPECT_EQ(s.world.baseline(s.scenario.forged_certificate).failed_step(), StepName::CheckAuthenticity);
}

TEST(Forge, CopyingTheRealAttestationDoesNotHelp) {
    Scene s("forge-copied-attestation");
    auto fake = s.world.registry.resolve_profile(s.scenario.fake_profile_url);
    fake.attestation = s.world.profile().attestation;
    s.world.registry.publish(s.scenario.fake_profile_url, fake);
    const auto r = s.world.hardened(s.scenario.forged_certificate);
    EXPECT_EQ(r.failed_step(), StepName::CheckAuthenticity);
    EXPECT_NE(r.step(StepName::CheckAuthenticity).detail.find("covers profile"), std::string::npos);
}

TEST(Forge, BatchOfFourAllAcceptedByBaseline) {
    Scene s("forge-batch", 4);
    ASSERT_EQ(s.scenario.batch.size(), 4u);
    for (const auto& cert : s.scenario.batch) {
        EXPECT_TRUE(s.world.baseline(cert).valid());
        EXPECT_EQ(s.world.hardened(cert).failed_step(), StepName::CheckAuthenticity);
        EXPECT_EQ(cert.receipt->transaction_id, s.scenario.anchor_tx.transaction_id);
    }
}

TEST(Forge, DefaultUrlIsLookalikeOnWebHost) {
    fixtures::TempDir dir("forge-web");
    ProfileRegistry registry(std::make_shared<DirectoryWebHost>(dir.path()));
    SimulatedLedger ledger;
    const VictimIdentity victim{"Polytechnic of Milan", "https://www.polimi.it", "rettore@polimi.it",
                                "https://www.polimi.it/issuer.json"};
    EXPECT_EQ(default_fake_profile_url(victim), "https://polytechnic-of-milan.github.io/issuer/profile.json");
    ForgeOptions opts;
    opts.seed = Bytes{9};
    const auto s = forge(victim, fixtures::sample_recipient("r"), fixtures::sample_badge(fixtures::university_identity()),
                         registry, ledger, fixtures::kNow, opts);
    EXPECT_TRUE(std::filesystem::exists(dir.path() / "polytechnic-of-milan.github.io" / "issuer" / "profile.json"));
    EXPECT_TRUE(verify(s.forged_certificate, ledger, registry, fixtures::kNow).valid());
}

TEST(Forge, RejectsDegenerateOptions) {
    fixtures::World w("forge-options");
    const VictimIdentity victim{w.issuer.name, w.issuer.url, w.issuer.email, w.issuer.profile_url};
    ForgeOptions same;
    same.fake_profile_url = w.issuer.profile_url;
    EXPECT_THROW(forge(victim, fixtures::sample_recipient("r"), fixtures::sample_badge(w.issuer), w.registry, w.ledger,
                       w.now, same),
                 Error);
    ForgeOptions empty;
    empty.batch_size = 0;
    empty.fake_profile_url = "mock://fake/profile.json";
    EXPECT_THROW(forge(victim, fixtures::sample_recipient("r"), fixtures::sample_badge(w.issuer), w.registry, w.ledger,
                       w.now, empty),
                 EmptyBatch);
}

TEST(Differential, NamesDivergingStep) {
    Scene s("diff");
    const auto b = s.world.baseline(s.scenario.forged_certificate);
    const auto h = s.world.hardened(s.scenario.forged_certificate);
    const std::string text = report_differential(s.scenario, b, h);
    EXPECT_NE(text.find("rejected by the hardened verifier at CheckAuthenticity."), std::string::npos);
    EXPECT_NE(text.find("CheckAuthenticity     passed    failed    <-- diverges"), std::string::npos);
    EXPECT_EQ(text.find("DEFENSE FAILURE"), std::string::npos);
    EXPECT_EQ(text.find(" \n"), std::string::npos);
}

TEST(Differential, FlagsDefenseFailureLoudly) {
    Scene s("diff-failure");
    const auto b = s.world.baseline(s.scenario.forged_certificate);
    const std::string text = report_differential(s.scenario, b, b);
    EXPECT_NE(text.find("*** DEFENSE FAILURE"), std::string::npos);
    EXPECT_EQ(text.find("<-- diverges"), std::string::npos);
}

TEST(Differential, SeededRunsAreIdentical) {
    Scene a("diff-determinism");
    Scene b("diff-determinism");
    EXPECT_EQ(a.scenario.anchor_tx, b.scenario.anchor_tx);
    EXPECT_EQ(a.scenario.forged_certificate, b.scenario.forged_certificate);
    EXPECT_EQ(report_differential(a.scenario, a.world.baseline(a.scenario.forged_certificate),
                                  a.world.hardened(a.scenario.forged_certificate)),
              report_differential(b.scenario, b.world.baseline(b.scenario.forged_certificate),
                                  b.world.hardened(b.scenario.forged_certificate)));
}

TEST(VictimJson, RoundTripAndMissingField) {
    const VictimIdentity v{"U", "https://u.example", "a@u.example", "https://u.example/p.json"};
    EXPECT_EQ(victim_from_json(to_json(v)), v);
    EXPECT_THROW(victim_from_json(nlohmann::json{{"name", "U"}}), ParseError);
}
