//! MEKA label designation: `-C n` in the relation name, after a colon.
//!
//! `n > 0` marks the first `n` attributes as labels, `n < 0` the last `|n|`.

fn split_option(token: &str) -> Option<Option<&str>> {
    // Some(None): bare "-C", value in the next token. Some(Some(v)): "-C<v>".
    let rest = token.strip_prefix("-C")?;
    if rest.is_empty() {
        Some(None)
    } else {
        Some(Some(rest))
    }
}

/// The signed label count from a MEKA relation name, if present.
pub fn detect_meka_labels(relation_name: &str) -> Option<i64> {
    let (_, options) = relation_name.split_once(':')?;
    let tokens: Vec<&str> = options.split_whitespace().collect();
    for (i, tok) in tokens.iter().enumerate() {
        match split_option(tok) {
            Some(None) => return tokens.get(i + 1)?.parse().ok(),
            Some(Some(v)) => {
                if let Ok(n) = v.parse() {
                    return Some(n);
                }
            }
            None => {}
        }
    }
    None
}

/// Removes the `-C n` option; drops the colon when nothing else remains.
pub fn strip_meka_designation(relation_name: &str) -> String {
    let Some((base, options)) = relation_name.split_once(':') else {
        return relation_name.to_string();
    };
    let tokens: Vec<&str> = options.split_whitespace().collect();
    let mut kept = Vec::new();
    let mut i = 0;
    let mut stripped = false;
    while i < tokens.len() {
        if !stripped {
            match split_option(tokens[i]) {
                Some(None) if tokens.get(i + 1).is_some_and(|t| t.parse::<i64>().is_ok()) => {
                    stripped = true;
                    i += 2;
                    continue;
                }
                Some(Some(v)) if v.parse::<i64>().is_ok() => {
                    stripped = true;
                    i += 1;
                    continue;
                }
                _ => {}
            }
        }
        kept.push(tokens[i]);
        i += 1;
    }
    if !stripped {
        return relation_name.to_string();
    }
    if kept.is_empty() {
        base.trim_end().to_string()
    } else {
        format!("{}: {}", base.trim_end(), kept.join(" "))
    }
}

/// Relation name carrying `-C count`, replacing any existing designation.
pub fn meka_relation_name(base: &str, count: i64) -> String {
    let base = strip_meka_designation(base);
    match base.split_once(':') {
        Some((head, options)) => format!("{}: -C {count} {}", head.trim_end(), options.trim()),
        None => format!("{base}: -C {count}"),
    }
}
