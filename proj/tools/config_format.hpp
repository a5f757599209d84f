#pragma once

#include <CLI11.hpp>
#include <json.hpp>

#include <iterator>
#include <sstream>
#include <string>
#include <vector>

namespace tsko::cli {

/// Reads either key = value text or a run manifest (JSON with an "options"
/// object). Keys land on whichever subcommand was invoked, so one file can
/// drive any subcommand without section headers.
class ConfigFormat : public CLI::ConfigBase {
public:
    explicit ConfigFormat(const CLI::App* app) : app_(app) {}

    std::vector<CLI::ConfigItem> from_config(std::istream& input) const override {
        const std::string text{std::istreambuf_iterator<char>(input), std::istreambuf_iterator<char>()};
        const auto first = text.find_first_not_of(" \t\r\n");
        std::vector<CLI::ConfigItem> items;
        if (first != std::string::npos && text[first] == '{') {
            items = from_json(text);
        } else {
            std::istringstream in(text);
            items = CLI::ConfigBase::from_config(in);
        }
        const auto subs = app_->get_subcommands();
        if (!subs.empty()) {
            for (auto& item : items) {
                if (item.parents.empty()) {
                    item.parents.push_back(subs.front()->get_name());
                }
            }
        }
        return items;
    }

private:
    static std::string scalar(const nlohmann::json& v) {
        if (v.is_string()) {
            return v.get<std::string>();
        }
        return v.dump();
    }

    static std::vector<CLI::ConfigItem> from_json(const std::string& text) {
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(text);
        } catch (const nlohmann::json::exception& e) {
            throw CLI::ConversionError("config file is not valid JSON: " + std::string(e.what()));
        }
        const nlohmann::json& options = j.contains("options") ? j.at("options") : j;
        if (!options.is_object()) {
            throw CLI::ConversionError("config JSON needs an object of options");
        }
        std::vector<CLI::ConfigItem> items;
        for (const auto& [key, value] : options.items()) {
            CLI::ConfigItem item;
            item.name = key;
            if (value.is_array()) {
                for (const auto& v : value) {
                    item.inputs.push_back(scalar(v));
                }
            } else {
                item.inputs.push_back(scalar(value));
            }
            items.push_back(std::move(item));
        }
        return items;
    }

    const CLI::App* app_;
};

} // namespace tsko::cli
