#pragma once

#include <string>
#include <string_view>

namespace semcf {

/// Hex digest of the SHA-256 hash of `data`. Used for dataset and
/// cost-config fingerprints in cache files.
std::string sha256_hex(std::string_view data);

}  // namespace semcf
