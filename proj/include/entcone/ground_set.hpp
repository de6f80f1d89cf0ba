#pragma once

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "entcone/rational.hpp"

namespace entcone {

// Subsets of a ground set are bitmasks; bit i corresponds to the i-th label.
using Mask = std::uint32_t;

constexpr int kMaxGroundSize = 24;

inline int popcount(Mask m) { return __builtin_popcount(m); }

// Ordered list of distinct element names.  The label order fixes the
// subset <-> bitmask correspondence used by every operation.
class GroundSet {
public:
    GroundSet() = default;

    explicit GroundSet(std::vector<std::string> labels) : labels_(std::move(labels))
    {
        if (labels_.size() > static_cast<std::size_t>(kMaxGroundSize))
            throw std::invalid_argument("ground set larger than " + std::to_string(kMaxGroundSize));
        for (std::size_t i = 0; i < labels_.size(); ++i) {
            validate_label(labels_[i]);
            if (!index_.emplace(labels_[i], static_cast<int>(i)).second)
                throw std::invalid_argument("duplicate ground-set label '" + labels_[i] + "'");
        }
    }

    int size() const { return static_cast<int>(labels_.size()); }
    std::size_t subset_count() const { return std::size_t{1} << labels_.size(); }
    Mask full_mask() const { return static_cast<Mask>(subset_count() - 1); }

    const std::vector<std::string>& labels() const { return labels_; }
    const std::string& label(int i) const { return labels_.at(static_cast<std::size_t>(i)); }

    bool contains(const std::string& label) const { return index_.count(label) != 0; }

    int index_of(const std::string& label) const
    {
        auto it = index_.find(label);
        if (it == index_.end())
            throw std::invalid_argument("unknown element '" + label + "'");
        return it->second;
    }

    Mask element_mask(const std::string& label) const { return Mask{1} << index_of(label); }

    template <class Range>
    Mask mask_of(const Range& labels) const
    {
        Mask m = 0;
        for (const auto& l : labels) {
            const Mask bit = element_mask(l);
            if (m & bit)
                throw std::invalid_argument("repeated element '" + std::string(l) + "' in subset");
            m |= bit;
        }
        return m;
    }

    Mask mask_of(std::initializer_list<std::string> labels) const
    {
        return mask_of<std::initializer_list<std::string>>(labels);
    }

    std::vector<std::string> subset_labels(Mask m) const
    {
        std::vector<std::string> out;
        for (int i = 0; i < size(); ++i)
            if (m & (Mask{1} << i))
                out.push_back(labels_[static_cast<std::size_t>(i)]);
        return out;
    }

    // Renders a subset as "{a,c}"; the empty set is "{}".
    std::string subset_to_string(Mask m) const
    {
        std::string out = "{";
        bool first = true;
        for (int i = 0; i < size(); ++i) {
            if (m & (Mask{1} << i)) {
                if (!first)
                    out += ',';
                out += labels_[static_cast<std::size_t>(i)];
                first = false;
            }
        }
        out += '}';
        return out;
    }

    Mask parse_subset(const std::string& text) const
    {
        if (text.size() < 2 || text.front() != '{' || text.back() != '}')
            throw parse_error("subset must look like '{a,c}': got '" + text + "'");
        const std::string body = text.substr(1, text.size() - 2);
        Mask m = 0;
        std::size_t pos = 0;
        while (pos < body.size()) {
            std::size_t comma = body.find(',', pos);
            if (comma == std::string::npos)
                comma = body.size();
            const std::string label = body.substr(pos, comma - pos);
            if (label.empty())
                throw parse_error("empty element name in subset '" + text + "'");
            if (!contains(label))
                throw parse_error("unknown element '" + label + "' in subset '" + text + "'");
            const Mask bit = element_mask(label);
            if (m & bit)
                throw parse_error("repeated element in subset '" + text + "'");
            m |= bit;
            pos = comma + 1;
        }
        return m;
    }

    bool operator==(const GroundSet& other) const { return labels_ == other.labels_; }
    bool operator!=(const GroundSet& other) const { return !(*this == other); }

    static void validate_label(const std::string& label)
    {
        if (label.empty())
            throw std::invalid_argument("empty element label");
        for (char c : label)
            if (c == '{' || c == '}' || c == ',' || std::isspace(static_cast<unsigned char>(c)))
                throw std::invalid_argument("label '" + label + "' contains a reserved character");
    }

private:
    std::vector<std::string> labels_;
    std::unordered_map<std::string, int> index_;
};

// Iterates the submasks of `sup` in ascending numeric order (including 0 and
// sup itself).
class SubmaskRange {
public:
    explicit SubmaskRange(Mask sup) : sup_(sup) {}

    class iterator {
    public:
        iterator(Mask cur, Mask sup, bool done) : cur_(cur), sup_(sup), done_(done) {}
        Mask operator*() const { return cur_; }
        iterator& operator++()
        {
            if (cur_ == sup_) {
                done_ = true;
            } else {
                // next submask in ascending order
                cur_ = (cur_ - sup_) & sup_;
            }
            return *this;
        }
        bool operator!=(const iterator& o) const
        {
            if (done_ != o.done_)
                return true;
            return !done_ && cur_ != o.cur_;
        }

    private:
        Mask cur_;
        Mask sup_;
        bool done_;
    };

    iterator begin() const { return iterator(0, sup_, false); }
    iterator end() const { return iterator(0, sup_, true); }

private:
    Mask sup_;
};

}  // namespace entcone
