#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace clothrl {

// Plain text key-value configuration: one `key = value` per line, `#`
// comments, blank lines ignored. Keys are kept in sorted order so
// serialization is canonical (used for fingerprinting).
class KvConfig {
public:
    KvConfig() = default;

    static KvConfig parse(const std::string& text);
    static KvConfig load(const std::string& path);

    void set(const std::string& key, const std::string& value);
    void set(const std::string& key, double value);
    void set(const std::string& key, long long value);

    bool has(const std::string& key) const;
    std::optional<std::string> get(const std::string& key) const;

    std::string get_string(const std::string& key, const std::string& fallback) const;
    double get_double(const std::string& key, double fallback) const;
    long long get_int(const std::string& key, long long fallback) const;
    bool get_bool(const std::string& key, bool fallback) const;
    std::vector<long long> get_int_list(const std::string& key,
                                        const std::vector<long long>& fallback) const;

    // Canonical `key = value` text, keys sorted.
    std::string serialize() const;
    void save(const std::string& path) const;

    const std::map<std::string, std::string>& entries() const { return entries_; }

private:
    std::map<std::string, std::string> entries_;
};

}  // namespace clothrl
