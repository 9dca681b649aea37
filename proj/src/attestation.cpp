#include "blockcerts/attestation.hpp"

#include "blockcerts/errors.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace blockcerts {

using nlohmann::json;

namespace {

json unsigned_fields(const IdentityAttestation& a) {
    return {
        {"subjectName", a.subject_name},
        {"subjectProfileUrl", a.subject_profile_url},
        {"subjectKeyAddress", a.subject_key_address.hex()},
        {"issuerCaName", a.issuer_ca_name},
        {"validFrom", a.valid_from},
        {"validTo", a.valid_to},
    };
}

} // namespace

std::string attestation_signed_bytes(const IdentityAttestation& a) { return unsigned_fields(a).dump(); }

IdentityAttestation issue_attestation(const Keypair& ca_key, const std::string& ca_name, const SubjectIdentity& subject,
                                      EpochSeconds valid_from, EpochSeconds valid_to) {
    if (valid_from >= valid_to) {
        throw InvalidValidityWindow("attestation validity window is empty: [" + std::to_string(valid_from) + ", " +
                                    std::to_string(valid_to) + ")");
    }
    IdentityAttestation a;
    a.subject_name = subject.name;
    a.subject_profile_url = subject.profile_url;
    a.subject_key_address = subject.key_address;
    a.issuer_ca_name = ca_name;
    a.valid_from = valid_from;
    a.valid_to = valid_to;
    a.signature = sign(ca_key, as_bytes(attestation_signed_bytes(a)));
    return a;
}

bool verify_attestation_signature(const IdentityAttestation& a, std::span<const std::uint8_t> ca_public_key) {
    return verify_signature(ca_public_key, as_bytes(attestation_signed_bytes(a)), a.signature);
}

json to_json(const IdentityAttestation& a) {
    json j = unsigned_fields(a);
    j["signature"] = to_hex(a.signature);
    return j;
}

IdentityAttestation attestation_from_json(const json& j) {
    try {
        IdentityAttestation a;
        a.subject_name = j.at("subjectName").get<std::string>();
        a.subject_profile_url = j.at("subjectProfileUrl").get<std::string>();
        a.subject_key_address = ChainAddress::parse(j.at("subjectKeyAddress").get<std::string>());
        a.issuer_ca_name = j.at("issuerCaName").get<std::string>();
        a.valid_from = j.at("validFrom").get<EpochSeconds>();
        a.valid_to = j.at("validTo").get<EpochSeconds>();
        a.signature = from_hex(j.at("signature").get<std::string>());
        return a;
    } catch (const json::exception& e) {
        throw ParseError(std::string("attestation: ") + e.what());
    }
}

void TrustStore::add(TrustAnchor anchor) {
    if (find(anchor.name) != nullptr) {
        throw Error("trust store already has an anchor named '" + anchor.name + "'");
    }
    anchors_.push_back(std::move(anchor));
}

const TrustAnchor* TrustStore::find(std::string_view name) const {
    const auto it = std::find_if(anchors_.begin(), anchors_.end(), [&](const TrustAnchor& a) { return a.name == name; });
    return it == anchors_.end() ? nullptr : &*it;
}

json TrustStore::to_json() const {
    json j = json::array();
    for (const auto& a : anchors_) {
        j.push_back({{"name", a.name}, {"publicKey", blockcerts::to_hex(a.public_key)}});
    }
    return j;
}

TrustStore TrustStore::from_json(const json& j) {
    if (!j.is_array()) {
        throw ParseError("trust store: expected a JSON array");
    }
    TrustStore store;
    try {
        for (const auto& item : j) {
            TrustAnchor anchor;
            anchor.name = item.at("name").get<std::string>();
            const Bytes key = from_hex(item.at("publicKey").get<std::string>());
            if (key.size() != kPublicKeySize) {
                throw ParseError("trust store: publicKey of '" + anchor.name + "' must be 32 bytes");
            }
            std::copy(key.begin(), key.end(), anchor.public_key.begin());
            store.add(std::move(anchor));
        }
    } catch (const json::exception& e) {
        throw ParseError(std::string("trust store: ") + e.what());
    }
    return store;
}

TrustStore TrustStore::load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw Error("cannot read trust store " + path.string());
    }
    std::stringstream buf;
    buf << in.rdbuf();
    try {
        return from_json(json::parse(buf.str()));
    } catch (const json::parse_error& e) {
        throw ParseError(path.string() + ": " + e.what());
    }
}

void TrustStore::save(const std::filesystem::path& path) const {
    std::ofstream out(path);
    out << to_json().dump(2) << '\n';
    if (!out) {
        throw Error("cannot write trust store " + path.string());
    }
}

} // namespace blockcerts
