#include "blockcerts/errors.hpp"
#include "blockcerts/registry.hpp"

#include "fixtures.hpp"

#include <gtest/gtest.h>

using namespace blockcerts;
using fixtures::kDay;
using fixtures::kNow;
using fixtures::seeded_keypair;

namespace {

IssuerProfileDocument sample_profile(const std::string& base) {
    IssuerProfileDocument doc;
    doc.name = "University of Example";
    doc.url = "https://www.university.example";
    doc.email = "registrar@university.example";
    doc.image = "data:image/png;base64,AAAA";
    doc.public_keys = {
        ProfileKey{address_of(seeded_keypair("old")), kNow - 900 * kDay, kNow - 400 * kDay, std::nullopt},
        ProfileKey{address_of(seeded_keypair("current")), kNow - 400 * kDay, std::nullopt, std::nullopt},
    };
    doc.revocation_list = base + "/revocations.json";
    return doc;
}

} // namespace

TEST(ProfileRegistry, MockRoundTripAndOverwrite) {
    ProfileRegistry reg;
    auto doc = sample_profile("mock://u.example");
    reg.publish("mock://u.example/profile.json", doc);
    EXPECT_EQ(reg.resolve_profile("mock://u.example/profile.json"), doc);

    doc.email = "changed@u.example";
    reg.publish("mock://u.example/profile.json", doc);
    EXPECT_EQ(reg.resolve_profile("mock://u.example/profile.json").email, "changed@u.example");
}

TEST(ProfileRegistry, FileRoundTripMatchesGoldenEncoding) {
    fixtures::TempDir dir("registry-file");
    const std::string url = "file://" + (dir.path() / "issuer" / "profile.json").string();
    ProfileRegistry reg;
    const auto doc = sample_profile("file://" + dir.path().string());
    reg.publish(url, doc);
    EXPECT_EQ(reg.resolve_profile(url), doc);

    const auto on_disk = nlohmann::json::parse(fixtures::read_file(dir.path() / "issuer" / "profile.json"));
    const auto golden = nlohmann::json::parse(R"({
        "name": "University of Example",
        "url": "https://www.university.example",
        "email": "registrar@university.example",
        "image": "data:image/png;base64,AAAA",
        "publicKeys": [
            {"address": ")" + doc.public_keys[0].key_address.hex() + R"(", "created": 1622240000, "expires": 1665440000},
            {"address": ")" + doc.public_keys[1].key_address.hex() + R"(", "created": 1665440000}
        ],
        "revocationList": ")" + doc.revocation_list + R"("
    })");
    EXPECT_EQ(on_disk, golden);
}

TEST(ProfileRegistry, UnpublishedUrlIsUnreachable) {
    fixtures::TempDir dir("registry-missing");
    ProfileRegistry reg(std::make_shared<DirectoryWebHost>(dir.path()));
    EXPECT_THROW(reg.resolve_profile("mock://nowhere/profile.json"), UnreachableUrl);
    EXPECT_THROW(reg.resolve_profile("file://" + (dir.path() / "absent.json").string()), UnreachableUrl);
    EXPECT_THROW(reg.resolve_profile("https://nowhere.example/profile.json"), UnreachableUrl);
}

TEST(ProfileRegistry, UnsupportedSchemes) {
    ProfileRegistry reg;
    EXPECT_THROW(reg.resolve_profile("ftp://u.example/p.json"), UnsupportedScheme);
    EXPECT_THROW(reg.resolve_profile("u.example/p.json"), UnsupportedScheme);
    EXPECT_THROW(reg.publish("gopher://u.example/p", sample_profile("mock://u")), UnsupportedScheme);
    // Without a web host there is nowhere to put http(s) documents.
    EXPECT_THROW(reg.publish("https://u.example/p.json", sample_profile("mock://u")), UnsupportedScheme);
}

TEST(ProfileRegistry, ServesWhateverIsPublishedAtAnyUrl) {
    fixtures::TempDir dir("registry-attacker");
    ProfileRegistry reg(std::make_shared<DirectoryWebHost>(dir.path()));
    auto lookalike = sample_profile("https://attacker.github.io/issuer");
    lookalike.public_keys = {ProfileKey{address_of(seeded_keypair("attacker")), kNow, std::nullopt, std::nullopt}};
    const std::string url = "https://attacker.github.io/issuer/profile.json";
    reg.publish(url, lookalike);
    const auto resolved = reg.resolve_profile(url);
    EXPECT_EQ(resolved, lookalike);
    EXPECT_EQ(resolved.name, "University of Example");
}

TEST(ProfileRegistry, MalformedDocumentsAreParseErrors) {
    ProfileRegistry reg;
    reg.publish_raw("mock://x/p.json", "{not json");
    EXPECT_THROW(reg.resolve_profile("mock://x/p.json"), ParseError);

    auto j = to_json(sample_profile("mock://x"));
    j["publicKeys"][0]["expires"] = j["publicKeys"][0]["created"];
    reg.publish_raw("mock://x/bad-key.json", j.dump());
    EXPECT_THROW(reg.resolve_profile("mock://x/bad-key.json"), ParseError);

    reg.publish_raw("mock://x/rev.json", R"({"revokedAssertions": [{"id": "a"}, {"id": "a"}]})");
    EXPECT_THROW(reg.resolve_revocations("mock://x/rev.json"), ParseError);
}

TEST(ProfileJson, AttestationRoundTrips) {
    auto doc = sample_profile("mock://u");
    const Keypair ca = seeded_keypair("ca");
    doc.attestation = issue_attestation(ca, "CA", SubjectIdentity{doc.name, "mock://u/p.json", doc.public_keys[1].key_address},
                                        kNow - kDay, kNow + kDay);
    EXPECT_EQ(profile_from_json(to_json(doc)), doc);
}

TEST(RevocationList, MembershipAndIdempotentRevoke) {
    RevocationList list;
    EXPECT_FALSE(list.contains("urn:a"));
    EXPECT_TRUE(list.revoke("urn:a", "issued in error"));
    EXPECT_FALSE(list.revoke("urn:a", "again"));
    EXPECT_TRUE(list.revoke("urn:b"));
    EXPECT_TRUE(list.contains("urn:a"));
    EXPECT_FALSE(list.contains("urn:c"));
    ASSERT_NE(list.find("urn:a"), nullptr);
    EXPECT_EQ(list.find("urn:a")->reason, "issued in error");
    EXPECT_EQ(list.revoked_assertions.size(), 2u);

    ProfileRegistry reg;
    reg.publish("mock://u/rev.json", list);
    EXPECT_EQ(reg.resolve_revocations("mock://u/rev.json"), list);
}

TEST(DirectoryWebHost, MapsUrlsToPaths) {
    const DirectoryWebHost host("/srv/hosted");
    EXPECT_EQ(host.path_for("https://a.example/x/y.json"), std::filesystem::path("/srv/hosted/a.example/x/y.json"));
    EXPECT_EQ(host.path_for("http://a.example"), std::filesystem::path("/srv/hosted/a.example/index.json"));
    EXPECT_EQ(host.path_for("https://a.example/dir/"), std::filesystem::path("/srv/hosted/a.example/dir/index.json"));
    EXPECT_THROW(host.path_for("https://a.example/../../etc/passwd"), UnsupportedScheme);
    EXPECT_THROW(host.path_for("mock://a.example/x"), UnsupportedScheme);
}

TEST(DirectoryWebHost, PutThenGet) {
    fixtures::TempDir dir("webhost");
    DirectoryWebHost host(dir.path());
    EXPECT_EQ(host.get("https://a.example/p.json"), std::nullopt);
    host.put("https://a.example/p.json", "body");
    EXPECT_EQ(host.get("https://a.example/p.json"), "body");
    EXPECT_TRUE(std::filesystem::exists(dir.path() / "a.example" / "p.json"));
}

TEST(FileUrl, PathExtraction) {
    EXPECT_EQ(file_url_path("file:///tmp/x.json"), std::filesystem::path("/tmp/x.json"));
    EXPECT_THROW(file_url_path("file://relative/x.json"), UnsupportedScheme);
    EXPECT_THROW(file_url_path("https://a/x.json"), UnsupportedScheme);
}
