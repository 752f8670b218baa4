/// Punctuation split off as standalone tokens.
const PUNCTUATION: [char; 15] = [
    '.', ',', ';', ':', '!', '?', '(', ')', '"', '…', '“', '”', '[', ']', '»',
];
/// Punctuation that is split off the front of a word as well.
const LEADING: [char; 6] = ['(', '"', '“', '[', '«', '…'];

/// Whitespace tokenization with terminal and clause punctuation split off.
///
/// Internal hyphens, apostrophes and periods stay attached (`1927-28`,
/// `creature's`, `3.5`). Each word is tokenized independently, so tokenizing a
/// text sentence by sentence gives the same tokens as tokenizing it whole.
pub fn tokenize(text: &str) -> Vec<String> {
    let mut tokens = Vec::new();
    for word in text.split_whitespace() {
        let mut core = word;
        while let Some(c) = core.chars().next().filter(|c| LEADING.contains(c)) {
            tokens.push(c.to_string());
            core = &core[c.len_utf8()..];
        }
        let mut trailing = Vec::new();
        while let Some(c) = core.chars().next_back().filter(|c| PUNCTUATION.contains(c)) {
            trailing.push(c.to_string());
            core = &core[..core.len() - c.len_utf8()];
        }
        if !core.is_empty() {
            tokens.push(core.to_owned());
        }
        tokens.extend(trailing.into_iter().rev());
    }
    tokens
}
