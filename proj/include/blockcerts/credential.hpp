#pragma once

// Open Badges / Blockcerts document model.
//
// Parsing is deliberately lenient about missing fields: a document with an
// absent mandatory field still parses, and validate() reports the gap. Only
// structural problems (wrong JSON types, unknown keys, bad hex) are parse
// errors.

#include "blockcerts/bytes.hpp"
#include "blockcerts/merkle.hpp"

#include <nlohmann/json.hpp>

#include <array>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace blockcerts {

struct IssuerProfileRef {
    std::string issuer_id; ///< URL of the hosted issuer profile
    std::string issuer_name;
    std::string issuer_url;
    std::string issuer_email;
    std::string revocation_list;
    /// Carried opaquely; verification never reads it.
    std::optional<std::string> issuer_public_key;

    bool operator==(const IssuerProfileRef&) const = default;
};

struct RecipientProfile {
    std::string id; ///< recipient chain address in this system
    std::string type;
    std::optional<std::string> name;
    std::optional<std::string> email;
    std::optional<std::string> public_key;

    bool operator==(const RecipientProfile&) const = default;
};

struct BadgeClass {
    std::string id;
    std::string type;
    std::string name;
    std::string description;
    std::string image;
    std::string criteria;
    IssuerProfileRef issuer;
    std::optional<std::vector<std::string>> alignment;
    std::optional<std::vector<std::string>> tags;

    bool operator==(const BadgeClass&) const = default;
};

inline constexpr std::string_view kMerkleAnchorMethod = "merkle-anchor";
inline constexpr std::string_view kSimulatedChain = "sim";

struct VerificationMethod {
    std::string method{kMerkleAnchorMethod};
    std::string chain{kSimulatedChain};

    bool operator==(const VerificationMethod&) const = default;
};

struct Assertion {
    std::string id;
    std::string type;
    RecipientProfile recipient;
    BadgeClass badge;
    VerificationMethod verification;
    std::optional<EpochSeconds> issued_on; ///< mandatory; optional only so validate() can report it
    std::optional<EpochSeconds> expires;
    std::optional<std::string> evidence;
    std::optional<std::string> narrative;
    std::optional<std::string> image;
    std::optional<bool> revoked;
    std::optional<std::string> revocation_reason;

    bool operator==(const Assertion&) const = default;
};

/// The eight diploma supplement sections, in their standard order.
enum class SupplementSection : std::size_t {
    holder,
    qualification,
    level,
    contents_and_results,
    function,
    additional,
    issuer,
    national_system,
};

inline constexpr std::size_t kSupplementSectionCount = 8;

std::string_view section_key(SupplementSection s);

struct DiplomaSupplement {
    using Section = std::map<std::string, std::string>;

    std::array<Section, kSupplementSectionCount> sections{};

    Section& operator[](SupplementSection s) { return sections[static_cast<std::size_t>(s)]; }
    const Section& operator[](SupplementSection s) const { return sections[static_cast<std::size_t>(s)]; }

    bool operator==(const DiplomaSupplement&) const = default;
};

struct SignatureLine {
    std::string name;
    std::string title;

    bool operator==(const SignatureLine&) const = default;
};

struct BlockcertsCertificate {
    Assertion assertion;
    std::optional<DiplomaSupplement> supplement;
    std::optional<std::vector<SignatureLine>> signature_lines;
    std::optional<MerkleReceipt> receipt;

    bool is_signed() const { return receipt.has_value(); }

    bool operator==(const BlockcertsCertificate&) const = default;
};

struct Violation {
    std::string field; ///< dotted path, e.g. "assertion.badge.issuer.issuer_email"
    std::string rule;  ///< "mandatory", "url" or "expires-after-issued-on"

    bool operator==(const Violation&) const = default;
};

/// Empty result means the certificate satisfies every model invariant.
std::vector<Violation> validate(const BlockcertsCertificate& cert);

/// Sorted-key, minified UTF-8 JSON without the receipt.
/// Throws InvalidCertificate when validate() reports anything.
std::string canonical_bytes(const BlockcertsCertificate& cert);

/// SHA-256 of canonical_bytes(cert).
Digest certificate_hash(const BlockcertsCertificate& cert);

nlohmann::json to_json(const BlockcertsCertificate& cert);
BlockcertsCertificate certificate_from_json(const nlohmann::json& j);
BlockcertsCertificate parse_certificate(std::string_view text);

/// Pretty file form (receipt included when present).
std::string serialize_certificate(const BlockcertsCertificate& cert);

/// True for mock://, file://, http:// and https:// URLs with a non-empty remainder.
bool is_supported_url(std::string_view url);

} // namespace blockcerts
