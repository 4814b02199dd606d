//! Aho-Corasick recognizer for words avoiding a fixed set of factors.

use std::collections::VecDeque;

use crate::freealg::Word;

/// Deterministic automaton over letters `1..=alphabet` whose live states are
/// exactly the prefixes of words containing none of the patterns.
#[derive(Clone, Debug)]
pub struct FactorAutomaton {
    alphabet: usize,
    /// `delta[state][letter - 1]`
    delta: Vec<Vec<usize>>,
    dead: Vec<bool>,
}

impl FactorAutomaton {
    pub fn new(alphabet: usize, patterns: &[&Word]) -> Self {
        let mut trie: Vec<Vec<Option<usize>>> = vec![vec![None; alphabet]];
        let mut dead = vec![false];
        for pattern in patterns {
            let mut state = 0;
            for &letter in pattern.letters() {
                let slot = letter as usize - 1;
                state = match trie[state][slot] {
                    Some(next) => next,
                    None => {
                        trie.push(vec![None; alphabet]);
                        dead.push(false);
                        let next = trie.len() - 1;
                        trie[state][slot] = Some(next);
                        next
                    }
                };
            }
            dead[state] = true;
        }

        let mut delta = vec![vec![0; alphabet]; trie.len()];
        let mut fail = vec![0; trie.len()];
        let mut queue = VecDeque::new();
        for slot in 0..alphabet {
            if let Some(next) = trie[0][slot] {
                delta[0][slot] = next;
                queue.push_back(next);
            }
        }
        while let Some(state) = queue.pop_front() {
            dead[state] |= dead[fail[state]];
            for slot in 0..alphabet {
                match trie[state][slot] {
                    Some(next) => {
                        fail[next] = delta[fail[state]][slot];
                        delta[state][slot] = next;
                        queue.push_back(next);
                    }
                    None => delta[state][slot] = delta[fail[state]][slot],
                }
            }
        }
        FactorAutomaton { alphabet, delta, dead }
    }

    pub fn alphabet(&self) -> usize {
        self.alphabet
    }

    pub fn state_count(&self) -> usize {
        self.delta.len()
    }

    fn step(&self, state: usize, letter: usize) -> Option<usize> {
        let next = self.delta[state][letter - 1];
        (!self.dead[next]).then_some(next)
    }

    pub fn accepts(&self, word: &Word) -> bool {
        let mut state = 0;
        for &letter in word.letters() {
            if letter as usize > self.alphabet {
                return false;
            }
            match self.step(state, letter as usize) {
                Some(next) => state = next,
                None => return false,
            }
        }
        true
    }

    /// Number of accepted words of each degree `0..=max_degree`.
    pub fn counts(&self, max_degree: usize) -> Vec<u64> {
        let mut ways = vec![0u64; self.state_count()];
        ways[0] = 1;
        let mut out = vec![1];
        for _ in 0..max_degree {
            let mut next = vec![0u64; self.state_count()];
            for (state, &w) in ways.iter().enumerate() {
                if w == 0 {
                    continue;
                }
                for letter in 1..=self.alphabet {
                    if let Some(t) = self.step(state, letter) {
                        next[t] = next[t].checked_add(w).expect("normal word count exceeds u64");
                    }
                }
            }
            out.push(next.iter().try_fold(0u64, |a, &b| a.checked_add(b)).expect("normal word count exceeds u64"));
            ways = next;
        }
        out
    }

    /// Accepted words of exactly `degree` letters, in deglex order.
    pub fn words(&self, degree: usize) -> Vec<Word> {
        let mut out = Vec::new();
        let mut prefix = Vec::with_capacity(degree);
        self.collect(0, degree, &mut prefix, &mut out);
        out
    }

    fn collect(&self, state: usize, degree: usize, prefix: &mut Vec<u8>, out: &mut Vec<Word>) {
        if prefix.len() == degree {
            out.push(Word::from_raw(prefix.clone()));
            return;
        }
        for letter in 1..=self.alphabet {
            if let Some(next) = self.step(state, letter) {
                prefix.push(letter as u8);
                self.collect(next, degree, prefix, out);
                prefix.pop();
            }
        }
    }
}
