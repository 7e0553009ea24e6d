#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#define CPPHTTPLIB_OPENSSL_SUPPORT
#include <httplib.h>
#include <openssl/evp.h>
#include <zlib.h>

#include "immunize/cli.hpp"
#include "immunize/errors.hpp"

namespace immunize::cli {

namespace fs = std::filesystem;

namespace {

struct DatasetInfo {
    const char* name;
    const char* host;
    const char* path;
    const char* filename; // decompressed name in the cache
};

constexpr DatasetInfo kCatalog[] = {
    {"facebook", "https://snap.stanford.edu", "/data/facebook_combined.txt.gz", "facebook_combined.txt"},
    {"email", "https://snap.stanford.edu", "/data/email-Eu-core.txt.gz", "email-Eu-core.txt"},
    {"hep-th", "https://snap.stanford.edu", "/data/ca-HepTh.txt.gz", "ca-HepTh.txt"},
};

std::string sha256_hex(const std::string& bytes) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1)
        throw IoError("sha256 computation failed");
    static const char* hex = "0123456789abcdef";
    std::string out;
    out.reserve(2 * len);
    for (unsigned int i = 0; i < len; ++i) {
        out.push_back(hex[digest[i] >> 4]);
        out.push_back(hex[digest[i] & 0xf]);
    }
    return out;
}

std::string gunzip(const std::string& compressed) {
    z_stream strm{};
    if (inflateInit2(&strm, 16 + MAX_WBITS) != Z_OK) throw IoError("zlib init failed");
    std::string out;
    std::vector<char> buf(1 << 20);
    strm.next_in = reinterpret_cast<Bytef*>(const_cast<char*>(compressed.data()));
    strm.avail_in = static_cast<uInt>(compressed.size());
    int rc = Z_OK;
    while (rc != Z_STREAM_END) {
        strm.next_out = reinterpret_cast<Bytef*>(buf.data());
        strm.avail_out = static_cast<uInt>(buf.size());
        rc = inflate(&strm, Z_NO_FLUSH);
        if (rc != Z_OK && rc != Z_STREAM_END) {
            inflateEnd(&strm);
            throw IoError("gzip payload is corrupt (zlib rc " + std::to_string(rc) + ")");
        }
        out.append(buf.data(), buf.size() - strm.avail_out);
    }
    inflateEnd(&strm);
    return out;
}

std::string read_file(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

const DatasetInfo* find_dataset(const std::string& name) {
    for (const auto& d : kCatalog)
        if (name == d.name) return &d;
    return nullptr;
}

} // namespace

std::string fetch_catalog() {
    std::string out;
    for (const auto& d : kCatalog) {
        out += d.name;
        out += " -> ";
        out += d.filename;
        out += '\n';
    }
    return out;
}

int cmd_fetch(const std::string& name, const std::string& sha256_hint) {
    const DatasetInfo* info = find_dataset(name);
    if (!info)
        throw ConfigError("unknown dataset '" + name + "'; available:\n" + fetch_catalog());

    fs::path dir = data_dir();
    fs::create_directories(dir);
    fs::path target = dir / info->filename;
    fs::path digest_file = dir / (std::string(info->filename) + ".sha256");

    auto verify = [&](const std::string& digest) {
        if (!sha256_hint.empty() && digest != sha256_hint)
            throw IoError("sha256 mismatch for " + target.string() + ": got " + digest +
                          ", expected " + sha256_hint);
        if (fs::exists(digest_file)) {
            std::string recorded = read_file(digest_file);
            recorded.erase(recorded.find_last_not_of(" \n\r\t") + 1);
            if (!recorded.empty() && recorded != digest)
                throw IoError("sha256 mismatch for " + target.string() +
                              " against previously recorded digest " + recorded);
        }
    };

    if (fs::exists(target)) {
        std::string digest = sha256_hex(read_file(target));
        verify(digest);
        std::cout << "already present: " << target.string() << " sha256=" << digest << '\n';
        return 0;
    }

    httplib::Client client(info->host);
    client.set_follow_location(true);
    client.set_connection_timeout(30);
    client.set_read_timeout(120);
    auto res = client.Get(info->path);
    if (!res || res->status != 200)
        throw IoError("download failed for " + std::string(info->host) + info->path +
                      (res ? " (HTTP " + std::to_string(res->status) + ")" : " (no response)"));

    std::string text = gunzip(res->body);
    std::string digest = sha256_hex(text);
    verify(digest);

    std::ofstream out(target, std::ios::binary);
    if (!out) throw IoError("cannot write " + target.string());
    out << text;
    out.close();
    std::ofstream dig(digest_file);
    dig << digest << '\n';
    std::cout << "fetched " << target.string() << " (" << text.size() << " bytes) sha256=" << digest
              << '\n';
    return 0;
}

} // namespace immunize::cli
