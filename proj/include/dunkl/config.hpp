#pragma once

#include <map>
#include <string>
#include <vector>

namespace dunkl {

// Flat `key = value` file; '#' starts a comment, lists are comma separated.
class KeyValueConfig {
public:
    KeyValueConfig() = default;
    [[nodiscard]] static KeyValueConfig parse(const std::string& text);
    [[nodiscard]] static KeyValueConfig load(const std::string& path);

    [[nodiscard]] bool has(const std::string& key) const { return values_.contains(key); }
    void set(const std::string& key, const std::string& value) { values_[key] = value; }

    // Typed getters throw ConfigError on malformed values; the fallback is used only when the key is absent.
    [[nodiscard]] std::string get_string(const std::string& key, const std::string& fallback) const;
    [[nodiscard]] double get_double(const std::string& key, double fallback) const;
    [[nodiscard]] int get_int(const std::string& key, int fallback) const;
    [[nodiscard]] std::vector<double> get_doubles(const std::string& key, const std::vector<double>& fallback) const;
    [[nodiscard]] std::vector<int> get_ints(const std::string& key, const std::vector<int>& fallback) const;

    [[nodiscard]] const std::map<std::string, std::string>& entries() const noexcept { return values_; }
    // one `key = value` line per entry, sorted
    [[nodiscard]] std::string echo() const;

private:
    std::map<std::string, std::string> values_;
};

} // namespace dunkl
