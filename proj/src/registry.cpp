#include "blockcerts/registry.hpp"

#include "blockcerts/errors.hpp"

#include <algorithm>
#include <fstream>
#include <mutex>
#include <set>
#include <sstream>

namespace blockcerts {

using nlohmann::json;

namespace {

constexpr std::string_view kMock = "mock://";
constexpr std::string_view kFile = "file://";
constexpr std::string_view kHttp = "http://";
constexpr std::string_view kHttps = "https://";

enum class Scheme { mock, file, web };

Scheme scheme_of(std::string_view url) {
    if (url.starts_with(kMock) && url.size() > kMock.size()) {
        return Scheme::mock;
    }
    if (url.starts_with(kFile) && url.size() > kFile.size()) {
        return Scheme::file;
    }
    if ((url.starts_with(kHttp) && url.size() > kHttp.size()) ||
        (url.starts_with(kHttps) && url.size() > kHttps.size())) {
        return Scheme::web;
    }
    throw UnsupportedScheme("unsupported URL: '" + std::string(url) + "'");
}

void write_atomically(const std::filesystem::path& path, const std::string& body) {
    if (path.has_parent_path()) {
        std::filesystem::create_directories(path.parent_path());
    }
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        out << body;
        if (!out) {
            throw Error("cannot write " + tmp.string());
        }
    }
    std::filesystem::rename(tmp, path);
}

std::optional<std::string> read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        return std::nullopt;
    }
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

json parse_document(std::string_view url, const std::string& body) {
    try {
        return json::parse(body);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string(url) + ": " + e.what());
    }
}

std::optional<EpochSeconds> opt_time(const json& j, const char* key) {
    const auto it = j.find(key);
    if (it == j.end() || it->is_null()) {
        return std::nullopt;
    }
    return it->get<EpochSeconds>();
}

} // namespace

bool RevocationList::contains(std::string_view assertion_id) const { return find(assertion_id) != nullptr; }

const RevokedAssertion* RevocationList::find(std::string_view assertion_id) const {
    const auto it = std::find_if(revoked_assertions.begin(), revoked_assertions.end(),
                                 [&](const RevokedAssertion& r) { return r.id == assertion_id; });
    return it == revoked_assertions.end() ? nullptr : &*it;
}

bool RevocationList::revoke(std::string assertion_id, std::optional<std::string> reason) {
    if (contains(assertion_id)) {
        return false;
    }
    revoked_assertions.push_back({std::move(assertion_id), std::move(reason)});
    return true;
}

json to_json(const ProfileKey& key) {
    json j = {{"address", key.key_address.hex()}, {"created", key.created}};
    if (key.expires) {
        j["expires"] = *key.expires;
    }
    if (key.revoked) {
        j["revoked"] = *key.revoked;
    }
    return j;
}

json to_json(const IssuerProfileDocument& doc) {
    json keys = json::array();
    for (const auto& k : doc.public_keys) {
        keys.push_back(to_json(k));
    }
    json j = {
        {"name", doc.name},
        {"url", doc.url},
        {"email", doc.email},
        {"publicKeys", std::move(keys)},
        {"revocationList", doc.revocation_list},
    };
    if (doc.image) {
        j["image"] = *doc.image;
    }
    if (doc.attestation) {
        j["attestation"] = to_json(*doc.attestation);
    }
    return j;
}

json to_json(const RevocationList& list) {
    json entries = json::array();
    for (const auto& r : list.revoked_assertions) {
        json e = {{"id", r.id}};
        if (r.reason) {
            e["reason"] = *r.reason;
        }
        entries.push_back(std::move(e));
    }
    return {{"revokedAssertions", std::move(entries)}};
}

IssuerProfileDocument profile_from_json(const json& j) {
    try {
        IssuerProfileDocument doc;
        doc.name = j.at("name").get<std::string>();
        doc.url = j.at("url").get<std::string>();
        doc.email = j.at("email").get<std::string>();
        if (const auto it = j.find("image"); it != j.end()) {
            doc.image = it->get<std::string>();
        }
        for (const auto& k : j.at("publicKeys")) {
            ProfileKey key;
            key.key_address = ChainAddress::parse(k.at("address").get<std::string>());
            key.created = k.at("created").get<EpochSeconds>();
            key.expires = opt_time(k, "expires");
            key.revoked = opt_time(k, "revoked");
            if (key.expires && *key.expires <= key.created) {
                throw ParseError("profile key " + key.key_address.hex() + ": expires must be after created");
            }
            if (key.revoked && *key.revoked < key.created) {
                throw ParseError("profile key " + key.key_address.hex() + ": revoked must not precede created");
            }
            doc.public_keys.push_back(key);
        }
        doc.revocation_list = j.at("revocationList").get<std::string>();
        if (const auto it = j.find("attestation"); it != j.end() && !it->is_null()) {
            doc.attestation = attestation_from_json(*it);
        }
        return doc;
    } catch (const json::exception& e) {
        throw ParseError(std::string("issuer profile: ") + e.what());
    }
}

RevocationList revocation_list_from_json(const json& j) {
    try {
        RevocationList list;
        std::set<std::string> seen;
        for (const auto& e : j.at("revokedAssertions")) {
            RevokedAssertion r;
            r.id = e.at("id").get<std::string>();
            if (const auto it = e.find("reason"); it != e.end()) {
                r.reason = it->get<std::string>();
            }
            if (!seen.insert(r.id).second) {
                throw ParseError("revocation list: duplicate id " + r.id);
            }
            list.revoked_assertions.push_back(std::move(r));
        }
        return list;
    } catch (const json::exception& e) {
        throw ParseError(std::string("revocation list: ") + e.what());
    }
}

std::filesystem::path file_url_path(std::string_view url) {
    if (!url.starts_with(kFile)) {
        throw UnsupportedScheme("not a file:// URL: '" + std::string(url) + "'");
    }
    std::string_view rest = url.substr(kFile.size());
    if (rest.starts_with("localhost/")) {
        rest.remove_prefix(std::string_view("localhost").size());
    }
    if (!rest.starts_with('/')) {
        throw UnsupportedScheme("file:// URL must carry an absolute path: '" + std::string(url) + "'");
    }
    return std::filesystem::path(std::string(rest));
}

std::filesystem::path DirectoryWebHost::path_for(std::string_view url) const {
    std::string_view rest;
    if (url.starts_with(kHttps)) {
        rest = url.substr(kHttps.size());
    } else if (url.starts_with(kHttp)) {
        rest = url.substr(kHttp.size());
    } else {
        throw UnsupportedScheme("DirectoryWebHost serves only http(s) URLs: '" + std::string(url) + "'");
    }
    if (const auto q = rest.find_first_of("?#"); q != std::string_view::npos) {
        rest = rest.substr(0, q);
    }
    std::filesystem::path relative;
    std::size_t start = 0;
    while (start <= rest.size()) {
        const std::size_t slash = std::min(rest.find('/', start), rest.size());
        const std::string_view segment = rest.substr(start, slash - start);
        if (segment == "..") {
            throw UnsupportedScheme("URL path escapes the host root: '" + std::string(url) + "'");
        }
        if (!segment.empty() && segment != ".") {
            relative /= std::string(segment);
        }
        start = slash + 1;
    }
    if (relative.empty()) {
        throw UnsupportedScheme("URL has no host: '" + std::string(url) + "'");
    }
    if (rest.ends_with('/') || relative.begin() == std::prev(relative.end())) {
        relative /= "index.json";
    }
    return root_ / relative;
}

void DirectoryWebHost::put(std::string_view url, const std::string& body) { write_atomically(path_for(url), body); }

std::optional<std::string> DirectoryWebHost::get(std::string_view url) const { return read_file(path_for(url)); }

void ProfileRegistry::publish(std::string_view url, const IssuerProfileDocument& doc) {
    publish_raw(url, to_json(doc).dump(2) + "\n");
}

void ProfileRegistry::publish(std::string_view url, const RevocationList& list) {
    publish_raw(url, to_json(list).dump(2) + "\n");
}

void ProfileRegistry::publish_raw(std::string_view url, const std::string& body) {
    switch (scheme_of(url)) {
    case Scheme::mock: {
        std::unique_lock lock(mutex_);
        mock_.insert_or_assign(std::string(url), body);
        return;
    }
    case Scheme::file:
        write_atomically(file_url_path(url), body);
        return;
    case Scheme::web:
        if (!web_) {
            throw UnsupportedScheme("no web host configured for '" + std::string(url) + "'");
        }
        web_->put(url, body);
        return;
    }
}

std::string ProfileRegistry::fetch(std::string_view url) const {
    std::optional<std::string> body;
    switch (scheme_of(url)) {
    case Scheme::mock: {
        std::shared_lock lock(mutex_);
        if (const auto it = mock_.find(url); it != mock_.end()) {
            body = it->second;
        }
        break;
    }
    case Scheme::file:
        body = read_file(file_url_path(url));
        break;
    case Scheme::web:
        if (web_) {
            body = web_->get(url);
        }
        break;
    }
    if (!body) {
        throw UnreachableUrl("nothing published at '" + std::string(url) + "'");
    }
    return *body;
}

IssuerProfileDocument ProfileRegistry::resolve_profile(std::string_view url) const {
    return profile_from_json(parse_document(url, fetch(url)));
}

RevocationList ProfileRegistry::resolve_revocations(std::string_view url) const {
    return revocation_list_from_json(parse_document(url, fetch(url)));
}

} // namespace blockcerts
