#include "blockcerts/credential.hpp"

#include "blockcerts/errors.hpp"

#include <set>

namespace blockcerts {

using nlohmann::json;

namespace {

constexpr std::array<std::string_view, kSupplementSectionCount> kSectionKeys = {
    "holder", "qualification", "level", "contents_and_results",
    "function", "additional", "issuer", "national_system",
};

// Reads an object field by field and rejects keys nobody asked for.
class ObjectReader {
public:
    ObjectReader(const json& j, std::string path) : j_(j), path_(std::move(path)) {
        if (!j_.is_object()) {
            throw ParseError(path_ + ": expected an object");
        }
    }

    ObjectReader(const ObjectReader&) = delete;
    ObjectReader& operator=(const ObjectReader&) = delete;

    ~ObjectReader() noexcept(false) {
        if (std::uncaught_exceptions() > 0) {
            return;
        }
        for (const auto& [key, _] : j_.items()) {
            if (!seen_.contains(key)) {
                throw ParseError(path_ + ": unknown field '" + key + "'");
            }
        }
    }

    const json* find(const std::string& key) {
        seen_.insert(key);
        const auto it = j_.find(key);
        return it == j_.end() ? nullptr : &*it;
    }

    std::string str(const std::string& key) { return opt_str(key).value_or(""); }

    std::optional<std::string> opt_str(const std::string& key) {
        const json* v = find(key);
        if (v == nullptr) {
            return std::nullopt;
        }
        if (!v->is_string()) {
            throw ParseError(field(key) + ": expected a string");
        }
        return v->get<std::string>();
    }

    std::optional<EpochSeconds> opt_time(const std::string& key) {
        const json* v = find(key);
        if (v == nullptr) {
            return std::nullopt;
        }
        if (!v->is_number_integer()) {
            throw ParseError(field(key) + ": expected integer epoch seconds");
        }
        return v->get<EpochSeconds>();
    }

    std::optional<bool> opt_bool(const std::string& key) {
        const json* v = find(key);
        if (v == nullptr) {
            return std::nullopt;
        }
        if (!v->is_boolean()) {
            throw ParseError(field(key) + ": expected a boolean");
        }
        return v->get<bool>();
    }

    std::optional<std::vector<std::string>> opt_str_list(const std::string& key) {
        const json* v = find(key);
        if (v == nullptr) {
            return std::nullopt;
        }
        if (!v->is_array()) {
            throw ParseError(field(key) + ": expected an array of strings");
        }
        std::vector<std::string> out;
        for (const auto& item : *v) {
            if (!item.is_string()) {
                throw ParseError(field(key) + ": expected an array of strings");
            }
            out.push_back(item.get<std::string>());
        }
        return out;
    }

    std::string field(const std::string& key) const { return path_ + "." + key; }

private:
    const json& j_;
    std::string path_;
    std::set<std::string> seen_;
};

void put_opt(json& j, const char* key, const std::optional<std::string>& v) {
    if (v) {
        j[key] = *v;
    }
}

json issuer_to_json(const IssuerProfileRef& r) {
    json j = {
        {"issuer_id", r.issuer_id},       {"issuer_name", r.issuer_name},
        {"issuer_url", r.issuer_url},     {"issuer_email", r.issuer_email},
        {"revocation_list", r.revocation_list},
    };
    put_opt(j, "issuer_public_key", r.issuer_public_key);
    return j;
}

json recipient_to_json(const RecipientProfile& r) {
    json j = {{"id", r.id}, {"type", r.type}};
    put_opt(j, "name", r.name);
    put_opt(j, "email", r.email);
    put_opt(j, "public_key", r.public_key);
    return j;
}

json badge_to_json(const BadgeClass& b) {
    json j = {
        {"id", b.id},       {"type", b.type},         {"name", b.name},
        {"description", b.description}, {"image", b.image}, {"criteria", b.criteria},
        {"issuer", issuer_to_json(b.issuer)},
    };
    if (b.alignment) {
        j["alignment"] = *b.alignment;
    }
    if (b.tags) {
        j["tags"] = *b.tags;
    }
    return j;
}

json assertion_to_json(const Assertion& a) {
    json j = {
        {"id", a.id},
        {"type", a.type},
        {"recipient", recipient_to_json(a.recipient)},
        {"badge", badge_to_json(a.badge)},
        {"verification", {{"method", a.verification.method}, {"chain", a.verification.chain}}},
    };
    if (a.issued_on) {
        j["issuedOn"] = *a.issued_on;
    }
    if (a.expires) {
        j["expires"] = *a.expires;
    }
    put_opt(j, "evidence", a.evidence);
    put_opt(j, "narrative", a.narrative);
    put_opt(j, "image", a.image);
    if (a.revoked) {
        j["revoked"] = *a.revoked;
    }
    put_opt(j, "revocationReason", a.revocation_reason);
    return j;
}

json supplement_to_json(const DiplomaSupplement& s) {
    json j = json::object();
    for (std::size_t i = 0; i < kSupplementSectionCount; ++i) {
        j[std::string(kSectionKeys[i])] = s.sections[i];
    }
    return j;
}

// Everything except the receipt. std::map-backed json keeps keys sorted.
json hashed_content(const BlockcertsCertificate& cert) {
    json j = {{"assertion", assertion_to_json(cert.assertion)}};
    if (cert.supplement) {
        j["supplement"] = supplement_to_json(*cert.supplement);
    }
    if (cert.signature_lines) {
        json lines = json::array();
        for (const auto& l : *cert.signature_lines) {
            lines.push_back({{"name", l.name}, {"title", l.title}});
        }
        j["signature_lines"] = std::move(lines);
    }
    return j;
}

IssuerProfileRef issuer_from_json(const json& j, const std::string& path) {
    ObjectReader r(j, path);
    IssuerProfileRef out;
    out.issuer_id = r.str("issuer_id");
    out.issuer_name = r.str("issuer_name");
    out.issuer_url = r.str("issuer_url");
    out.issuer_email = r.str("issuer_email");
    out.revocation_list = r.str("revocation_list");
    out.issuer_public_key = r.opt_str("issuer_public_key");
    return out;
}

RecipientProfile recipient_from_json(const json& j, const std::string& path) {
    ObjectReader r(j, path);
    RecipientProfile out;
    out.id = r.str("id");
    out.type = r.str("type");
    out.name = r.opt_str("name");
    out.email = r.opt_str("email");
    out.public_key = r.opt_str("public_key");
    return out;
}

BadgeClass badge_from_json(const json& j, const std::string& path) {
    ObjectReader r(j, path);
    BadgeClass out;
    out.id = r.str("id");
    out.type = r.str("type");
    out.name = r.str("name");
    out.description = r.str("description");
    out.image = r.str("image");
    out.criteria = r.str("criteria");
    if (const json* issuer = r.find("issuer")) {
        out.issuer = issuer_from_json(*issuer, r.field("issuer"));
    }
    out.alignment = r.opt_str_list("alignment");
    out.tags = r.opt_str_list("tags");
    return out;
}

Assertion assertion_from_json(const json& j) {
    ObjectReader r(j, "assertion");
    Assertion out;
    out.id = r.str("id");
    out.type = r.str("type");
    if (const json* v = r.find("recipient")) {
        out.recipient = recipient_from_json(*v, r.field("recipient"));
    }
    if (const json* v = r.find("badge")) {
        out.badge = badge_from_json(*v, r.field("badge"));
    }
    if (const json* v = r.find("verification")) {
        ObjectReader vr(*v, r.field("verification"));
        out.verification.method = vr.str("method");
        out.verification.chain = vr.str("chain");
    } else {
        out.verification = VerificationMethod{"", ""};
    }
    out.issued_on = r.opt_time("issuedOn");
    out.expires = r.opt_time("expires");
    out.evidence = r.opt_str("evidence");
    out.narrative = r.opt_str("narrative");
    out.image = r.opt_str("image");
    out.revoked = r.opt_bool("revoked");
    out.revocation_reason = r.opt_str("revocationReason");
    return out;
}

DiplomaSupplement supplement_from_json(const json& j) {
    ObjectReader r(j, "supplement");
    DiplomaSupplement out;
    for (std::size_t i = 0; i < kSupplementSectionCount; ++i) {
        const std::string key(kSectionKeys[i]);
        const json* section = r.find(key);
        if (section == nullptr) {
            throw ParseError("supplement: missing section '" + key + "'");
        }
        if (!section->is_object()) {
            throw ParseError(r.field(key) + ": expected an object of strings");
        }
        for (const auto& [k, v] : section->items()) {
            if (!v.is_string()) {
                throw ParseError(r.field(key) + "." + k + ": expected a string");
            }
            out.sections[i][k] = v.get<std::string>();
        }
    }
    return out;
}

void require(std::vector<Violation>& out, const std::string& value, const std::string& field) {
    if (value.empty()) {
        out.push_back({field, "mandatory"});
    }
}

void require_url(std::vector<Violation>& out, const std::string& value, const std::string& field,
                 bool mandatory) {
    if (value.empty()) {
        if (mandatory) {
            out.push_back({field, "mandatory"});
        } else {
            out.push_back({field, "url"});
        }
        return;
    }
    if (!is_supported_url(value)) {
        out.push_back({field, "url"});
    }
}

} // namespace

std::string_view section_key(SupplementSection s) { return kSectionKeys[static_cast<std::size_t>(s)]; }

bool is_supported_url(std::string_view url) {
    for (std::string_view scheme : {"mock://", "file://", "http://", "https://"}) {
        if (url.starts_with(scheme)) {
            return url.size() > scheme.size();
        }
    }
    return false;
}

std::vector<Violation> validate(const BlockcertsCertificate& cert) {
    std::vector<Violation> out;
    const Assertion& a = cert.assertion;

    require(out, a.id, "assertion.id");
    require(out, a.type, "assertion.type");

    require(out, a.recipient.id, "assertion.recipient.id");
    require(out, a.recipient.type, "assertion.recipient.type");

    const BadgeClass& b = a.badge;
    require(out, b.id, "assertion.badge.id");
    require(out, b.type, "assertion.badge.type");
    require(out, b.name, "assertion.badge.name");
    require(out, b.description, "assertion.badge.description");
    require(out, b.image, "assertion.badge.image");
    require(out, b.criteria, "assertion.badge.criteria");

    const IssuerProfileRef& i = b.issuer;
    require_url(out, i.issuer_id, "assertion.badge.issuer.issuer_id", true);
    require(out, i.issuer_name, "assertion.badge.issuer.issuer_name");
    require_url(out, i.issuer_url, "assertion.badge.issuer.issuer_url", true);
    require(out, i.issuer_email, "assertion.badge.issuer.issuer_email");
    require_url(out, i.revocation_list, "assertion.badge.issuer.revocation_list", false);

    if (a.verification.method.empty() || a.verification.chain.empty()) {
        out.push_back({"assertion.verification", "mandatory"});
    }
    if (!a.issued_on) {
        out.push_back({"assertion.issuedOn", "mandatory"});
    }
    if (a.issued_on && a.expires && *a.expires <= *a.issued_on) {
        out.push_back({"assertion.expires", "expires-after-issued-on"});
    }
    return out;
}

std::string canonical_bytes(const BlockcertsCertificate& cert) {
    const auto violations = validate(cert);
    if (!violations.empty()) {
        std::string msg = "certificate has " + std::to_string(violations.size()) + " violation(s):";
        for (const auto& v : violations) {
            msg += " " + v.field + " (" + v.rule + ")";
        }
        throw InvalidCertificate(msg);
    }
    try {
        return hashed_content(cert).dump(-1, ' ', false, json::error_handler_t::strict);
    } catch (const json::type_error& e) {
        throw InvalidCertificate(std::string("certificate is not valid UTF-8: ") + e.what());
    }
}

Digest certificate_hash(const BlockcertsCertificate& cert) { return sha256(canonical_bytes(cert)); }

json to_json(const BlockcertsCertificate& cert) {
    json j = hashed_content(cert);
    if (cert.receipt) {
        j["receipt"] = to_json(*cert.receipt);
    }
    return j;
}

BlockcertsCertificate certificate_from_json(const json& j) {
    ObjectReader r(j, "certificate");
    BlockcertsCertificate cert;
    if (const json* v = r.find("assertion")) {
        cert.assertion = assertion_from_json(*v);
    } else {
        cert.assertion.verification = VerificationMethod{"", ""};
    }
    if (const json* v = r.find("supplement")) {
        cert.supplement = supplement_from_json(*v);
    }
    if (const json* v = r.find("signature_lines")) {
        if (!v->is_array()) {
            throw ParseError("signature_lines: expected an array");
        }
        std::vector<SignatureLine> lines;
        for (const auto& item : *v) {
            ObjectReader lr(item, "signature_lines[]");
            lines.push_back({lr.str("name"), lr.str("title")});
        }
        cert.signature_lines = std::move(lines);
    }
    if (const json* v = r.find("receipt")) {
        cert.receipt = receipt_from_json(*v);
    }
    return cert;
}

BlockcertsCertificate parse_certificate(std::string_view text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("certificate: ") + e.what());
    }
    return certificate_from_json(j);
}

std::string serialize_certificate(const BlockcertsCertificate& cert) { return to_json(cert).dump(2) + "\n"; }

} // namespace blockcerts
