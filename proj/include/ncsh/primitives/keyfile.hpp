#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "ncsh/primitives/rsa.hpp"

namespace ncsh::primitives {

// Text key format, one `name=value` per line:
//   level=<L1|L2|L3>
//   n=<lowercase hex>
//   e=<lowercase hex>
//   d=<lowercase hex>      (private files only)
std::string format_public_key(const RsaKeyPair& key);
std::string format_private_key(const RsaKeyPair& key);

struct PublicKeyFile {
    SecurityLevel level = SecurityLevel::L1;
    RsaPublicKey key;
};

PublicKeyFile parse_public_key(std::string_view text);
RsaKeyPair parse_private_key(std::string_view text);

// Writes <prefix>.pub and <prefix>.key. Throws io-error on failure.
void write_key_files(const std::filesystem::path& prefix, const RsaKeyPair& key);
PublicKeyFile read_public_key_file(const std::filesystem::path& path);
RsaKeyPair read_private_key_file(const std::filesystem::path& path);

} // namespace ncsh::primitives
