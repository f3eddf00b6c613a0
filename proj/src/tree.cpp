#include "msx/tree.hpp"

#include <algorithm>
#include <cctype>

namespace msx {

namespace {
const std::string kHole = "\xE2\x80\xA2";   // •
const std::string kSqcup = "\xE2\x8A\x94";  // ⊔
} // namespace

// ---------------------------------------------------------------- features

std::string Feature::str() const
{
    switch (val) {
    case Valuation::Plus: return cat + "+";
    case Valuation::Minus: return cat + "-";
    default: return cat;
    }
}

Feature Feature::parse(std::string_view tok)
{
    Feature f;
    if (tok.size() > 1 && (tok.back() == '+' || tok.back() == '-')) {
        f.val = tok.back() == '+' ? Valuation::Plus : Valuation::Minus;
        tok.remove_suffix(1);
    }
    if (tok.empty())
        throw SyntaxError("empty feature name");
    f.cat = std::string(tok);
    return f;
}

std::string bundle_str(const Bundle& b)
{
    std::string s;
    for (const auto& f : b) {
        if (!s.empty())
            s += ",";
        s += f.str();
    }
    return s;
}

Bundle bundle_union(const Bundle& a, const Bundle& b)
{
    Bundle r = a;
    r.insert(b.begin(), b.end());
    return r;
}

Bundle bundle_intersect(const Bundle& a, const Bundle& b)
{
    Bundle r;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::inserter(r, r.end()));
    return r;
}

Bundle bundle_minus(const Bundle& a, const Bundle& b)
{
    Bundle r;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::inserter(r, r.end()));
    return r;
}

bool bundle_subset(const Bundle& a, const Bundle& b)
{
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

Bundle parse_bundle(std::string_view text)
{
    Bundle b;
    std::string cur;
    auto flush = [&] {
        size_t i = 0, j = cur.size();
        while (i < j && std::isspace(static_cast<unsigned char>(cur[i]))) ++i;
        while (j > i && std::isspace(static_cast<unsigned char>(cur[j - 1]))) --j;
        if (j > i)
            b.insert(Feature::parse(std::string_view(cur).substr(i, j - i)));
        cur.clear();
    };
    for (char c : text) {
        if (c == '{' || c == '}' || c == '[' || c == ']')
            continue;
        if (c == ',')
            flush();
        else
            cur += c;
    }
    flush();
    return b;
}

std::string InternalLabel::str() const
{
    std::string s = bundle_str(bundle);
    if (!atom.empty())
        s += (s.empty() ? "@ " : " @ ") + atom;
    return s;
}

std::string vertex_str(const VertexId& v)
{
    if (v.empty())
        return "root";
    std::string s;
    for (size_t i = 0; i < v.size(); ++i) {
        if (i)
            s += ".";
        s += std::to_string(v[i]);
    }
    return s;
}

// ---------------------------------------------------------------- trees

namespace {

std::string leaf_enc(const LeafLabel& l, const std::optional<InternalLabel>& label)
{
    switch (l.kind) {
    case LeafKind::Atom: return l.name;
    case LeafKind::Feature: return l.feature.str();
    case LeafKind::Boundary: {
        InternalLabel il{l.bundle, l.name};
        return "{" + il.str() + "}";
    }
    case LeafKind::Hole: return l.hole > 0 ? kHole + std::to_string(l.hole) : kHole;
    case LeafKind::Trace: return "<" + l.name + ">";
    case LeafKind::Stub: return label ? "{" + label->str() + "|}" : "()";
    }
    return "?";
}

} // namespace

Tree::Tree() : Tree(hole()) {}

Tree Tree::make(Node n)
{
    if (n.kind == NodeKind::Binary) {
        const Tree& a = n.kids[0];
        const Tree& b = n.kids[1];
        bool swap = b.enc() < a.enc() || (b.enc() == a.enc() && b.henc() < a.henc());
        if (swap) {
            std::swap(n.kids[0], n.kids[1]);
            if (n.head >= 0)
                n.head = 1 - n.head;
        }
    } else {
        n.head = -1;
    }

    n.nleaves = 0;
    n.nverts = 1;
    n.depth = 0;
    for (const auto& k : n.kids) {
        n.nleaves += k.num_leaves();
        n.nverts += k.num_vertices();
        n.depth = std::max(n.depth, k.depth() + 1);
    }
    if (n.kind == NodeKind::Leaf) {
        n.nleaves = 1;
        n.enc = leaf_enc(n.leaf, n.label);
        n.henc = n.enc;
        return Tree(std::make_shared<const Node>(std::move(n)));
    }

    std::string open = n.label ? "{" + n.label->str() + "| " : "(";
    std::string close = n.label ? "}" : ")";
    n.enc = open;
    n.henc = open;
    for (size_t i = 0; i < n.kids.size(); ++i) {
        if (i) {
            n.enc += " ";
            n.henc += " ";
        }
        n.enc += n.kids[i].enc();
        n.henc += n.kids[i].henc();
        if (static_cast<int>(i) == n.head)
            n.henc += "^";
    }
    n.enc += close;
    n.henc += close;
    return Tree(std::make_shared<const Node>(std::move(n)));
}

Tree Tree::leaf(LeafLabel l, std::optional<InternalLabel> label)
{
    Node n;
    n.kind = NodeKind::Leaf;
    n.leaf = std::move(l);
    if (n.leaf.kind == LeafKind::Stub)
        n.label = std::move(label);
    return make(std::move(n));
}

Tree Tree::atom(std::string name)
{
    LeafLabel l;
    l.kind = LeafKind::Atom;
    l.name = std::move(name);
    return leaf(std::move(l));
}

Tree Tree::feature(Feature f)
{
    LeafLabel l;
    l.kind = LeafKind::Feature;
    l.feature = std::move(f);
    return leaf(std::move(l));
}

Tree Tree::hole(int index)
{
    LeafLabel l;
    l.kind = LeafKind::Hole;
    l.hole = index;
    return leaf(std::move(l));
}

Tree Tree::trace(const Tree& origin)
{
    LeafLabel l;
    l.kind = LeafKind::Trace;
    l.name = origin.enc();
    return leaf(std::move(l));
}

Tree Tree::stub(std::optional<InternalLabel> label)
{
    LeafLabel l;
    l.kind = LeafKind::Stub;
    return leaf(std::move(l), std::move(label));
}

Tree Tree::boundary(Bundle b, std::string atom)
{
    LeafLabel l;
    l.kind = LeafKind::Boundary;
    l.bundle = std::move(b);
    l.name = std::move(atom);
    return leaf(std::move(l));
}

Tree Tree::unary(Tree child, std::optional<InternalLabel> label)
{
    Node n;
    n.kind = NodeKind::Unary;
    n.label = std::move(label);
    n.kids.push_back(std::move(child));
    return make(std::move(n));
}

Tree Tree::binary(Tree a, Tree b, std::optional<InternalLabel> label, int head)
{
    Node n;
    n.kind = NodeKind::Binary;
    n.label = std::move(label);
    n.kids.push_back(std::move(a));
    n.kids.push_back(std::move(b));
    n.head = head;
    return make(std::move(n));
}

Tree Tree::from_kids(std::vector<Tree> kids, std::optional<InternalLabel> label, int head)
{
    switch (kids.size()) {
    case 0: return stub(std::move(label));
    case 1: return unary(std::move(kids[0]), std::move(label));
    case 2: return binary(std::move(kids[0]), std::move(kids[1]), std::move(label), head);
    default: throw ArityError("a vertex may have at most two children");
    }
}

const Tree& Tree::at(const VertexId& v) const
{
    const Tree* t = this;
    for (int i : v) {
        if (i < 0 || i >= static_cast<int>(t->kids().size()))
            throw IndexError("no vertex " + vertex_str(v));
        t = &t->kids()[i];
    }
    return *t;
}

Tree Tree::replace(const VertexId& v, const Tree& sub) const
{
    if (v.empty())
        return sub;
    VertexId rest(v.begin() + 1, v.end());
    std::vector<Tree> kids = n_->kids;
    if (v[0] < 0 || v[0] >= static_cast<int>(kids.size()))
        throw IndexError("no vertex " + vertex_str(v));
    kids[v[0]] = kids[v[0]].replace(rest, sub);
    return from_kids(std::move(kids), n_->label, n_->head);
}

Tree Tree::with_label(std::optional<InternalLabel> l) const
{
    if (is_leaf()) {
        if (leaf_kind() == LeafKind::Stub)
            return leaf(n_->leaf, std::move(l));
        return *this;
    }
    return from_kids(n_->kids, std::move(l), n_->head);
}

Tree Tree::with_head(int h) const
{
    if (!is_binary())
        return *this;
    return binary(n_->kids[0], n_->kids[1], n_->label, h);
}

Tree Tree::without_heads() const
{
    if (is_leaf())
        return *this;
    std::vector<Tree> kids;
    for (const auto& k : n_->kids)
        kids.push_back(k.without_heads());
    return from_kids(std::move(kids), n_->label, -1);
}

namespace {
void collect(const Tree& t, VertexId& path, std::vector<VertexId>& out, bool leaves_only)
{
    if (!leaves_only || t.is_leaf())
        out.push_back(path);
    for (size_t i = 0; i < t.kids().size(); ++i) {
        path.push_back(static_cast<int>(i));
        collect(t.kids()[i], path, out, leaves_only);
        path.pop_back();
    }
}
} // namespace

std::vector<VertexId> Tree::vertices() const
{
    std::vector<VertexId> out;
    VertexId p;
    collect(*this, p, out, false);
    return out;
}

std::vector<VertexId> Tree::leaves() const
{
    std::vector<VertexId> out;
    VertexId p;
    collect(*this, p, out, true);
    return out;
}

bool Tree::has_unary() const
{
    if (is_unary())
        return true;
    for (const auto& k : kids())
        if (k.has_unary())
            return true;
    return false;
}

Bundle Tree::root_bundle() const
{
    if (label())
        return label()->bundle;
    if (is_leaf()) {
        if (leaf_kind() == LeafKind::Feature)
            return {leaf_label().feature};
        if (leaf_kind() == LeafKind::Boundary)
            return leaf_label().bundle;
    }
    return {};
}

// ---------------------------------------------------------------- forests

Forest::Forest(std::vector<Tree> comps) : comps_(std::move(comps))
{
    std::sort(comps_.begin(), comps_.end(), [](const Tree& a, const Tree& b) {
        return a.enc() < b.enc() || (a.enc() == b.enc() && a.henc() < b.henc());
    });
    if (comps_.empty()) {
        key_ = "1";
        return;
    }
    key_.clear();
    for (size_t i = 0; i < comps_.size(); ++i) {
        if (i)
            key_ += " " + kSqcup + " ";
        key_ += comps_[i].enc();
    }
}

int Forest::num_leaves() const
{
    int n = 0;
    for (const auto& c : comps_)
        n += c.num_leaves();
    return n;
}

Forest Forest::operator+(const Forest& o) const
{
    std::vector<Tree> v = comps_;
    v.insert(v.end(), o.comps_.begin(), o.comps_.end());
    return Forest(std::move(v));
}

Forest Forest::with(const Tree& t) const
{
    std::vector<Tree> v = comps_;
    v.push_back(t);
    return Forest(std::move(v));
}

Forest Forest::without(size_t i) const
{
    std::vector<Tree> v = comps_;
    v.erase(v.begin() + static_cast<long>(i));
    return Forest(std::move(v));
}

// ---------------------------------------------------------------- parsing

namespace {

class Parser {
public:
    Parser(std::string_view s, LeafMode mode) : s_(s), mode_(mode) {}

    Forest forest()
    {
        skip();
        std::vector<Tree> comps;
        if (peek_word() == "1") {
            pos_ += 1;
            skip();
            expect_end();
            return Forest();
        }
        comps.push_back(tree(false));
        for (;;) {
            skip();
            if (at_end())
                break;
            if (s_.compare(pos_, kSqcup.size(), kSqcup) == 0)
                pos_ += kSqcup.size();
            else if (s_[pos_] == ';')
                ++pos_;
            else
                fail("expected forest separator");
            comps.push_back(tree(false));
        }
        return Forest(std::move(comps));
    }

    Tree single()
    {
        Tree t = tree(false);
        skip();
        expect_end();
        return t;
    }

private:
    std::string_view s_;
    LeafMode mode_;
    size_t pos_ = 0;

    [[noreturn]] void fail(const std::string& m)
    {
        throw SyntaxError(m + " at offset " + std::to_string(pos_) + " in \"" +
                          std::string(s_) + "\"");
    }

    bool at_end() const { return pos_ >= s_.size(); }

    void skip()
    {
        while (!at_end() && std::isspace(static_cast<unsigned char>(s_[pos_])))
            ++pos_;
    }

    void expect_end()
    {
        if (!at_end())
            fail("trailing input");
    }

    static bool special(char c)
    {
        return std::isspace(static_cast<unsigned char>(c)) || c == '(' || c == ')' ||
               c == '{' || c == '}' || c == '<' || c == '>' || c == '|' || c == ',' ||
               c == '@' || c == ';' || c == '^';
    }

    bool at_sqcup() const { return s_.compare(pos_, kSqcup.size(), kSqcup) == 0; }
    bool at_hole() const { return s_.compare(pos_, kHole.size(), kHole) == 0; }

    std::string_view peek_word() const
    {
        size_t e = pos_;
        while (e < s_.size() && !special(s_[e]))
            ++e;
        return s_.substr(pos_, e - pos_);
    }

    std::string word()
    {
        size_t b = pos_;
        while (!at_end() && !special(s_[pos_]) && !at_sqcup())
            ++pos_;
        if (b == pos_)
            fail("expected a name");
        return std::string(s_.substr(b, pos_ - b));
    }

    Tree name_leaf(const std::string& w, bool in_morph)
    {
        bool feat = mode_ == LeafMode::Morph || (mode_ == LeafMode::Auto && in_morph);
        if (feat)
            return Tree::feature(Feature::parse(w));
        return Tree::atom(w);
    }

    Tree tree(bool in_morph)
    {
        skip();
        if (at_end())
            fail("unexpected end");
        char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            int head = -1;
            std::vector<Tree> kids = children(')', in_morph, head);
            return Tree::from_kids(std::move(kids), std::nullopt, head);
        }
        if (c == '{')
            return labeled();
        if (c == '<') {
            ++pos_;
            Tree inner = tree(in_morph);
            skip();
            if (at_end() || s_[pos_] != '>')
                fail("expected '>'");
            ++pos_;
            return Tree::trace(inner);
        }
        if (at_hole() || c == '_') {
            pos_ += at_hole() ? kHole.size() : 1;
            int idx = 0;
            while (!at_end() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
                idx = idx * 10 + (s_[pos_++] - '0');
            return Tree::hole(idx);
        }
        if (special(c))
            fail(std::string("unexpected '") + c + "'");
        return name_leaf(word(), in_morph);
    }

    // A '^' after a child marks it as the projecting one.
    std::vector<Tree> children(char close, bool in_morph, int& head)
    {
        std::vector<Tree> kids;
        for (;;) {
            skip();
            if (at_end())
                fail(std::string("expected '") + close + "'");
            if (s_[pos_] == close) {
                ++pos_;
                break;
            }
            if (s_[pos_] == '^') {
                if (kids.empty() || head >= 0)
                    fail("misplaced head mark");
                head = static_cast<int>(kids.size()) - 1;
                ++pos_;
                continue;
            }
            kids.push_back(tree(in_morph));
        }
        if (kids.size() > 2)
            fail("more than two children");
        return kids;
    }

    Tree labeled()
    {
        ++pos_;  // '{'
        size_t b = pos_;
        while (!at_end() && s_[pos_] != '|' && s_[pos_] != '@' && s_[pos_] != '}')
            ++pos_;
        if (at_end())
            fail("unterminated label");
        InternalLabel lab;
        lab.bundle = parse_bundle(s_.substr(b, pos_ - b));
        if (s_[pos_] == '@') {
            ++pos_;
            skip();
            lab.atom = word();
            skip();
        }
        if (at_end())
            fail("unterminated label");
        if (s_[pos_] == '}') {
            ++pos_;
            if (lab.atom.empty())
                fail("a bare bundle needs '|' or '@ atom'");
            return Tree::boundary(lab.bundle, lab.atom);
        }
        if (s_[pos_] != '|')
            fail("expected '|'");
        ++pos_;
        int head = -1;
        std::vector<Tree> kids = children('}', true, head);
        return Tree::from_kids(std::move(kids), lab, head);
    }
};

} // namespace

Tree parse_tree(std::string_view text, LeafMode mode)
{
    return Parser(text, mode).single();
}

Forest parse_forest(std::string_view text, LeafMode mode)
{
    return Parser(text, mode).forest();
}

} // namespace msx
