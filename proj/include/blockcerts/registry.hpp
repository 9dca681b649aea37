#pragma once

// Hosted issuer profiles and revocation lists, addressed by URL.
//
// Resolution is intentionally unauthenticated: whatever document sits at a
// URL is returned as-is. The issuer-impersonation attack depends on exactly
// this, and the hardened verifier compensates with attestations rather than
// by changing how documents are fetched.

#include "blockcerts/attestation.hpp"
#include "blockcerts/bytes.hpp"
#include "blockcerts/ledger.hpp"

#include <nlohmann/json.hpp>

#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <shared_mutex>
#include <string>
#include <string_view>
#include <vector>

namespace blockcerts {

struct ProfileKey {
    ChainAddress key_address;
    EpochSeconds created = 0;
    std::optional<EpochSeconds> expires;
    std::optional<EpochSeconds> revoked;

    bool operator==(const ProfileKey&) const = default;
};

struct IssuerProfileDocument {
    std::string name;
    std::string url;
    std::string email;
    std::optional<std::string> image;
    std::vector<ProfileKey> public_keys;
    std::string revocation_list;
    std::optional<IdentityAttestation> attestation;

    bool operator==(const IssuerProfileDocument&) const = default;
};

struct RevokedAssertion {
    std::string id;
    std::optional<std::string> reason;

    bool operator==(const RevokedAssertion&) const = default;
};

struct RevocationList {
    std::vector<RevokedAssertion> revoked_assertions;

    bool contains(std::string_view assertion_id) const;
    const RevokedAssertion* find(std::string_view assertion_id) const;

    /// Returns false (and changes nothing) when the id is already listed.
    bool revoke(std::string assertion_id, std::optional<std::string> reason = std::nullopt);

    bool operator==(const RevocationList&) const = default;
};

nlohmann::json to_json(const IssuerProfileDocument& doc);
nlohmann::json to_json(const ProfileKey& key);
nlohmann::json to_json(const RevocationList& list);
IssuerProfileDocument profile_from_json(const nlohmann::json& j);
RevocationList revocation_list_from_json(const nlohmann::json& j);

/// Backing store for http:// and https:// URLs.
class WebHost {
public:
    virtual ~WebHost() = default;
    virtual void put(std::string_view url, const std::string& body) = 0;
    virtual std::optional<std::string> get(std::string_view url) const = 0;
};

/// Serves https://host/a/b from <root>/host/a/b. Stands in for real web
/// hosting in local workspaces.
class DirectoryWebHost final : public WebHost {
public:
    explicit DirectoryWebHost(std::filesystem::path root) : root_(std::move(root)) {}

    void put(std::string_view url, const std::string& body) override;
    std::optional<std::string> get(std::string_view url) const override;

    std::filesystem::path path_for(std::string_view url) const;

private:
    std::filesystem::path root_;
};

/// What the verifiers need from hosting.
class ProfileResolver {
public:
    virtual ~ProfileResolver() = default;
    /// Throws UnreachableUrl, UnsupportedScheme or ParseError.
    virtual IssuerProfileDocument resolve_profile(std::string_view url) const = 0;
    virtual RevocationList resolve_revocations(std::string_view url) const = 0;
};

/// mock:// lives in memory, file:// on the local filesystem, http(s):// in the
/// optional WebHost.
class ProfileRegistry final : public ProfileResolver {
public:
    explicit ProfileRegistry(std::shared_ptr<WebHost> web = nullptr) : web_(std::move(web)) {}

    void publish(std::string_view url, const IssuerProfileDocument& doc);
    void publish(std::string_view url, const RevocationList& list);
    /// Stores arbitrary bytes; used for documents built outside this library.
    void publish_raw(std::string_view url, const std::string& body);

    IssuerProfileDocument resolve_profile(std::string_view url) const override;
    RevocationList resolve_revocations(std::string_view url) const override;

    std::string fetch(std::string_view url) const;

private:
    std::shared_ptr<WebHost> web_;
    mutable std::shared_mutex mutex_;
    std::map<std::string, std::string, std::less<>> mock_;
};

/// file:///abs/path -> /abs/path. Throws UnsupportedScheme for other URLs.
std::filesystem::path file_url_path(std::string_view url);

} // namespace blockcerts
