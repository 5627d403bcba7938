#include "clothrl/replay/persist.hpp"

#include <fstream>

#include <json.hpp>

#include "clothrl/common/errors.hpp"

namespace clothrl::replay {

namespace {
constexpr const char* kFormat = "clothrl-episodes";
constexpr int kVersion = 1;
}  // namespace

void save_episodes(const std::string& path, const EpisodeBuffer& buffer,
                   const std::string& task_name) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write episode file: " + path);

    nlohmann::json header;
    header["format"] = kFormat;
    header["version"] = kVersion;
    header["task"] = task_name;
    header["episodes"] = buffer.size();
    out << header.dump() << '\n';

    for (std::size_t e = 0; e < buffer.size(); ++e) {
        const EpisodeTrajectory& ep = buffer.episode(e);
        for (int t = 0; t < ep.length(); ++t) {
            const Transition& tr = ep.steps[std::size_t(t)];
            nlohmann::json j;
            j["ep"] = e;
            j["t"] = t;
            j["obs"] = tr.observation;
            j["action"] = tr.action;
            j["reward"] = tr.reward;
            j["next_obs"] = tr.next_observation;
            j["desired"] = tr.desired;
            j["achieved"] = tr.achieved;
            j["done"] = tr.done;
            out << j.dump() << '\n';
        }
    }
    if (!out) throw IoError("episode file write failed: " + path);
}

LoadedEpisodes load_episodes(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open episode file: " + path);

    std::string line;
    if (!std::getline(in, line)) throw IoError("episode file is empty: " + path);
    nlohmann::json header;
    try {
        header = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
        throw IoError(std::string("episode file: bad header: ") + e.what());
    }
    if (header.value("format", "") != kFormat)
        throw IoError("episode file: unrecognized format");
    if (header.value("version", -1) != kVersion)
        throw IoError("episode file: unsupported version");

    LoadedEpisodes out;
    out.task_name = header.value("task", "");
    const std::size_t n_episodes = header.value("episodes", std::size_t(0));
    out.episodes.resize(n_episodes);

    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(line);
        } catch (const nlohmann::json::exception& e) {
            throw IoError("episode file line " + std::to_string(lineno) + ": " + e.what());
        }
        const std::size_t e = j.at("ep").get<std::size_t>();
        if (e >= n_episodes) throw IoError("episode file: episode index out of range");
        Transition tr;
        tr.observation = j.at("obs").get<std::vector<double>>();
        tr.action = j.at("action").get<std::vector<double>>();
        tr.reward = j.at("reward").get<double>();
        tr.next_observation = j.at("next_obs").get<std::vector<double>>();
        tr.desired = j.at("desired").get<std::vector<double>>();
        tr.achieved = j.at("achieved").get<std::vector<double>>();
        tr.done = j.at("done").get<bool>();
        out.episodes[e].steps.push_back(std::move(tr));
    }
    for (const auto& ep : out.episodes) validate_trajectory(ep);
    return out;
}

}  // namespace clothrl::replay
