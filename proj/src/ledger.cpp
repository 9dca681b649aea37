#include "blockcerts/ledger.hpp"

#include "blockcerts/errors.hpp"

#include <sodium.h>

#include <fstream>
#include <mutex>

namespace blockcerts {

using nlohmann::json;

namespace {

void ensure_sodium() {
    static const int rc = sodium_init();
    if (rc < 0) {
        throw Error("libsodium initialisation failed");
    }
}

Bytes hex_field(const json& j, const char* key) { return from_hex(j.at(key).get<std::string>()); }

} // namespace

ChainAddress ChainAddress::parse(std::string_view hex) {
    if (hex.size() != 2 * kSize) {
        throw ParseError("chain address must be 40 hex characters: '" + std::string(hex) + "'");
    }
    const Bytes raw = from_hex(hex);
    std::array<std::uint8_t, kSize> out{};
    std::copy(raw.begin(), raw.end(), out.begin());
    return ChainAddress(out);
}

Keypair generate_keypair(std::optional<std::span<const std::uint8_t>> seed) {
    ensure_sodium();
    Keypair kp;
    std::array<std::uint8_t, crypto_sign_SECRETKEYBYTES> secret{};
    if (seed) {
        const Digest derived = sha256(*seed);
        std::copy(derived.begin(), derived.end(), kp.private_key.begin());
    } else {
        randombytes_buf(kp.private_key.data(), kp.private_key.size());
    }
    crypto_sign_seed_keypair(kp.public_key.data(), secret.data(), kp.private_key.data());
    sodium_memzero(secret.data(), secret.size());
    return kp;
}

ChainAddress derive_address(std::span<const std::uint8_t> public_key) {
    ensure_sodium();
    if (public_key.size() != kPublicKeySize) {
        throw MalformedKey("public key must be " + std::to_string(kPublicKeySize) + " bytes, got " +
                           std::to_string(public_key.size()));
    }
    if (crypto_core_ed25519_is_valid_point(public_key.data()) != 1) {
        throw MalformedKey("public key is not a valid ed25519 point");
    }
    const Digest h = sha256(public_key);
    std::array<std::uint8_t, ChainAddress::kSize> raw{};
    std::copy(h.end() - ChainAddress::kSize, h.end(), raw.begin());
    return ChainAddress(raw);
}

Bytes sign(const Keypair& kp, std::span<const std::uint8_t> message) {
    ensure_sodium();
    std::array<std::uint8_t, crypto_sign_PUBLICKEYBYTES> pk{};
    std::array<std::uint8_t, crypto_sign_SECRETKEYBYTES> sk{};
    crypto_sign_seed_keypair(pk.data(), sk.data(), kp.private_key.data());
    Bytes sig(crypto_sign_BYTES);
    crypto_sign_detached(sig.data(), nullptr, message.data(), message.size(), sk.data());
    sodium_memzero(sk.data(), sk.size());
    return sig;
}

bool verify_signature(std::span<const std::uint8_t> public_key, std::span<const std::uint8_t> message,
                      std::span<const std::uint8_t> signature) {
    ensure_sodium();
    if (public_key.size() != crypto_sign_PUBLICKEYBYTES || signature.size() != crypto_sign_BYTES) {
        return false;
    }
    return crypto_sign_verify_detached(signature.data(), message.data(), message.size(), public_key.data()) == 0;
}

json to_json(const Keypair& kp) {
    return {
        {"scheme", kSignatureScheme},
        {"private_key", to_hex(kp.private_key)},
        {"public_key", to_hex(kp.public_key)},
        {"address", address_of(kp).hex()},
    };
}

Keypair keypair_from_json(const json& j) {
    try {
        if (j.at("scheme").get<std::string>() != kSignatureScheme) {
            throw ParseError("keypair: unsupported scheme " + j.at("scheme").get<std::string>());
        }
        const Bytes priv = hex_field(j, "private_key");
        if (priv.size() != 32) {
            throw ParseError("keypair: private_key must be 32 bytes");
        }
        Keypair kp;
        std::copy(priv.begin(), priv.end(), kp.private_key.begin());
        std::array<std::uint8_t, crypto_sign_SECRETKEYBYTES> sk{};
        crypto_sign_seed_keypair(kp.public_key.data(), sk.data(), kp.private_key.data());
        sodium_memzero(sk.data(), sk.size());
        if (j.contains("public_key") && hex_field(j, "public_key") != Bytes(kp.public_key.begin(), kp.public_key.end())) {
            throw ParseError("keypair: public_key does not match private_key");
        }
        return kp;
    } catch (const json::exception& e) {
        throw ParseError(std::string("keypair: ") + e.what());
    }
}

Bytes signing_message(EpochSeconds timestamp, const ChainAddress& from, const ChainAddress& to,
                      const Digest& payload) {
    Bytes msg;
    msg.reserve(8 + 2 * ChainAddress::kSize + payload.size());
    const auto ts = static_cast<std::uint64_t>(timestamp);
    for (int shift = 56; shift >= 0; shift -= 8) {
        msg.push_back(static_cast<std::uint8_t>(ts >> shift));
    }
    msg.insert(msg.end(), from.bytes().begin(), from.bytes().end());
    msg.insert(msg.end(), to.bytes().begin(), to.bytes().end());
    msg.insert(msg.end(), payload.begin(), payload.end());
    return msg;
}

std::string compute_transaction_id(const LedgerTransaction& tx) {
    Bytes body = signing_message(tx.timestamp, tx.from_address, tx.to_address, tx.payload);
    body.insert(body.end(), tx.signature.begin(), tx.signature.end());
    body.insert(body.end(), tx.signer_public_key.begin(), tx.signer_public_key.end());
    return to_hex(sha256(body));
}

std::string check_transaction(const LedgerTransaction& tx) {
    if (tx.scheme != kSignatureScheme) {
        return "unsupported signature scheme '" + tx.scheme + "'";
    }
    ChainAddress signer;
    try {
        signer = derive_address(tx.signer_public_key);
    } catch (const MalformedKey& e) {
        return e.what();
    }
    if (signer != tx.from_address) {
        return "from_address does not match the signer public key";
    }
    if (!verify_signature(tx.signer_public_key,
                          signing_message(tx.timestamp, tx.from_address, tx.to_address, tx.payload), tx.signature)) {
        return "transaction signature does not verify";
    }
    if (compute_transaction_id(tx) != tx.transaction_id) {
        return "transaction_id does not match the transaction body";
    }
    return {};
}

json to_json(const LedgerTransaction& tx) {
    return {
        {"transaction_id", tx.transaction_id},
        {"timestamp", tx.timestamp},
        {"from_address", tx.from_address.hex()},
        {"to_address", tx.to_address.hex()},
        {"payload", to_hex(tx.payload)},
        {"scheme", tx.scheme},
        {"signature", to_hex(tx.signature)},
        {"signer_public_key", to_hex(tx.signer_public_key)},
    };
}

LedgerTransaction transaction_from_json(const json& j) {
    try {
        LedgerTransaction tx;
        tx.transaction_id = j.at("transaction_id").get<std::string>();
        tx.timestamp = j.at("timestamp").get<EpochSeconds>();
        tx.from_address = ChainAddress::parse(j.at("from_address").get<std::string>());
        tx.to_address = ChainAddress::parse(j.at("to_address").get<std::string>());
        tx.payload = digest_from_hex(j.at("payload").get<std::string>());
        tx.scheme = j.at("scheme").get<std::string>();
        tx.signature = hex_field(j, "signature");
        tx.signer_public_key = hex_field(j, "signer_public_key");
        return tx;
    } catch (const json::exception& e) {
        throw ParseError(std::string("transaction: ") + e.what());
    }
}

SimulatedLedger SimulatedLedger::open(const std::filesystem::path& path) {
    SimulatedLedger ledger;
    if (std::filesystem::exists(path)) {
        std::ifstream in(path);
        if (!in) {
            throw Error("cannot read ledger file " + path.string());
        }
        std::string line;
        std::size_t line_no = 0;
        while (std::getline(in, line)) {
            ++line_no;
            if (line.empty()) {
                continue;
            }
            json j;
            try {
                j = json::parse(line);
            } catch (const json::parse_error& e) {
                throw ParseError(path.string() + ":" + std::to_string(line_no) + ": " + e.what());
            }
            ledger.append(transaction_from_json(j));
        }
    } else if (path.has_parent_path()) {
        std::filesystem::create_directories(path.parent_path());
    }
    ledger.file_ = path;
    return ledger;
}

SimulatedLedger::SimulatedLedger(SimulatedLedger&& other) noexcept {
    std::unique_lock lock(other.mutex_);
    chain_ = std::move(other.chain_);
    index_ = std::move(other.index_);
    file_ = std::move(other.file_);
}

LedgerTransaction SimulatedLedger::submit_anchor(const Keypair& issuer, const ChainAddress& recipient,
                                                 const Digest& merkle_root, EpochSeconds timestamp) {
    LedgerTransaction tx;
    tx.timestamp = timestamp;
    tx.from_address = address_of(issuer);
    tx.to_address = recipient;
    tx.payload = merkle_root;
    tx.signature = sign(issuer, signing_message(timestamp, tx.from_address, recipient, merkle_root));
    tx.signer_public_key.assign(issuer.public_key.begin(), issuer.public_key.end());
    tx.transaction_id = compute_transaction_id(tx);
    append(tx);
    return tx;
}

void SimulatedLedger::append(const LedgerTransaction& tx) {
    if (const std::string problem = check_transaction(tx); !problem.empty()) {
        throw Error("rejected transaction " + tx.transaction_id + ": " + problem);
    }
    std::unique_lock lock(mutex_);
    if (index_.contains(tx.transaction_id)) {
        throw DuplicateTransaction(tx.transaction_id);
    }
    if (file_) {
        std::ofstream out(*file_, std::ios::app);
        out << to_json(tx).dump() << '\n';
        if (!out) {
            throw Error("cannot append to ledger file " + file_->string());
        }
    }
    index_.emplace(tx.transaction_id, chain_.size());
    chain_.push_back(tx);
}

LedgerTransaction SimulatedLedger::get_transaction(std::string_view transaction_id) const {
    std::shared_lock lock(mutex_);
    const auto it = index_.find(transaction_id);
    if (it == index_.end()) {
        throw TransactionNotFound(std::string(transaction_id));
    }
    return chain_[it->second];
}

std::size_t SimulatedLedger::size() const {
    std::shared_lock lock(mutex_);
    return chain_.size();
}

std::vector<LedgerTransaction> SimulatedLedger::transactions() const {
    std::shared_lock lock(mutex_);
    return chain_;
}

} // namespace blockcerts
