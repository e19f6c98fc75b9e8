//! Command-line front end. [`run`] does all the work and returns the exit
//! code with the text for stdout and stderr, so tests can drive it without
//! spawning processes.

use std::io::Read;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};
use spr_core::{
    enumerate_successful_reductions, is_reducible, is_reducible_with_witness, realistic_witness, realization,
    reduct_of, snr_count, successful_in, Error, LegalString, MicronuclearPattern, PointerIdSet, Reduction,
    ReductionGraph, RuleSet, SearchLimits,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_CAPACITY: i32 = 3;

const AFTER_HELP: &str = "\
Strings are whitespace-separated signed identities, e.g. \"3 -2 2 3\", where
-k is the inverted pointer k. Identities start at 2.

Rules are written snr:P, spr:P and sdr:P,Q. A reduction is a list of rules
separated by ';' in the order they are applied: \"spr:3; snr:-2\" applies
spr:3 first. Mathematical notation writes compositions right to left, so
the same reduction is usually written snr_-2 spr_3 there.

Exit codes: 0 success or affirmative verdict, 1 negative verdict,
2 invalid input or usage, 3 input too large for exhaustive search.";

#[derive(Debug, Parser)]
#[command(name = "spr", version, about = "String pointer reduction system", after_help = AFTER_HELP)]
struct Cli {
    /// Read STRING arguments from standard input, one per line.
    #[arg(long, global = true)]
    stdin: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check that STRING is legal and print it in normal form.
    Parse {
        #[arg(allow_hyphen_values = true)]
        string: Option<String>,
    },
    /// Encode a micronuclear pattern such as "M3 M4 ~M2 M1".
    Encode { pattern: Option<String> },
    /// Apply a reduction, given in application order.
    Apply {
        #[arg(allow_hyphen_values = true)]
        string: Option<String>,
        #[arg(long)]
        rules: String,
    },
    /// Print the components of the reduction graph, or the graph as DOT.
    Graph {
        #[arg(allow_hyphen_values = true)]
        string: Option<String>,
        /// Identities kept as edge labels, e.g. 5,6,7.
        #[arg(long, default_value = "")]
        remove: String,
        #[arg(long)]
        dot: bool,
    },
    /// Print the reduct of STRING with respect to the given identities.
    Reduct {
        #[arg(allow_hyphen_values = true)]
        string: Option<String>,
        #[arg(long, default_value = "")]
        remove: String,
    },
    /// Decide whether U is reducible to V.
    Reducible {
        #[arg(allow_hyphen_values = true)]
        u: Option<String>,
        #[arg(allow_hyphen_values = true)]
        v: Option<String>,
        #[arg(long, default_value = "snr,spr,sdr")]
        rules: String,
        /// Also search for a reduction mapping U to V.
        #[arg(long)]
        witness: bool,
        #[arg(long, default_value_t = spr_core::pattern::DEFAULT_MAX_DOMAIN)]
        max_domain: usize,
    },
    /// Number of snr steps in every reduction stopping at the given identities.
    SnrCount {
        #[arg(allow_hyphen_values = true)]
        string: Option<String>,
        #[arg(long, default_value = "")]
        remove: String,
    },
    /// Decide whether STRING has a successful reduction using the given rules.
    Successful {
        #[arg(allow_hyphen_values = true)]
        string: Option<String>,
        #[arg(long)]
        rules: String,
    },
    /// List successful reductions by exhaustive search.
    Enumerate {
        #[arg(allow_hyphen_values = true)]
        string: Option<String>,
        #[arg(long, default_value = "snr,spr,sdr")]
        rules: String,
        #[arg(long, default_value_t = 100)]
        limit: usize,
        #[arg(long, default_value_t = spr_core::pattern::DEFAULT_MAX_DOMAIN)]
        max_domain: usize,
    },
    /// Decide whether STRING is realistic up to renaming of pointers.
    Realizable {
        #[arg(allow_hyphen_values = true)]
        string: Option<String>,
        #[arg(long, default_value_t = spr_core::pattern::DEFAULT_MAX_DOMAIN)]
        max_domain: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: impl Into<String>) -> Self {
        Outcome {
            code: EXIT_OK,
            stdout: stdout.into(),
            stderr: String::new(),
        }
    }

    fn negative(stdout: impl Into<String>) -> Self {
        Outcome {
            code: EXIT_NEGATIVE,
            stdout: stdout.into(),
            stderr: String::new(),
        }
    }

    fn verdict(yes: bool, stdout: impl Into<String>) -> Self {
        if yes {
            Self::ok(stdout)
        } else {
            Self::negative(stdout)
        }
    }

    fn input_error(message: impl Into<String>) -> Self {
        Outcome {
            code: EXIT_INPUT,
            stdout: String::new(),
            stderr: message.into(),
        }
    }
}

impl From<Error> for Outcome {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Capacity { .. } => EXIT_CAPACITY,
            _ => EXIT_INPUT,
        };
        Outcome {
            code,
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        }
    }
}

/// Parses `args` (including the program name) and runs the subcommand.
/// `stdin` is only read when `--stdin` is given.
pub fn run<I, T>(args: I, stdin: &mut dyn Read) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => Outcome::ok(text),
                _ => Outcome::input_error(text),
            };
        }
    };
    let mut inputs = Inputs::new(cli.stdin, stdin);
    match execute(cli.command, &mut inputs) {
        Ok(outcome) => outcome,
        Err(outcome) => outcome,
    }
}

/// Positional inputs, either from the command line or from stdin lines.
struct Inputs<'a> {
    from_stdin: bool,
    reader: &'a mut dyn Read,
    lines: Option<std::vec::IntoIter<String>>,
}

impl<'a> Inputs<'a> {
    fn new(from_stdin: bool, reader: &'a mut dyn Read) -> Self {
        Inputs {
            from_stdin,
            reader,
            lines: None,
        }
    }

    fn next(&mut self, arg: Option<String>, name: &str) -> Result<String, Outcome> {
        if !self.from_stdin {
            return arg.ok_or_else(|| Outcome::input_error(format!("error: missing argument {name}\n")));
        }
        if arg.is_some() {
            return Err(Outcome::input_error(format!(
                "error: {name} given both as an argument and via --stdin\n"
            )));
        }
        if self.lines.is_none() {
            let mut text = String::new();
            self.reader
                .read_to_string(&mut text)
                .map_err(|e| Outcome::input_error(format!("error: cannot read stdin: {e}\n")))?;
            let lines: Vec<String> = text.lines().map(str::to_string).collect();
            self.lines = Some(lines.into_iter());
        }
        self.lines
            .as_mut()
            .and_then(Iterator::next)
            .ok_or_else(|| Outcome::input_error(format!("error: missing line for {name} on stdin\n")))
    }

    fn legal(&mut self, arg: Option<String>, name: &str) -> Result<LegalString, Outcome> {
        Ok(LegalString::parse(&self.next(arg, name)?)?)
    }
}

fn rule_set(text: &str) -> Result<RuleSet, Outcome> {
    Ok(RuleSet::parse(text)?)
}

fn ids(text: &str) -> Result<PointerIdSet, Outcome> {
    Ok(PointerIdSet::parse_list(text)?)
}

fn execute(command: Command, inputs: &mut Inputs<'_>) -> Result<Outcome, Outcome> {
    let out = match command {
        Command::Parse { string } => {
            let u = inputs.legal(string, "STRING")?;
            Outcome::ok(format!("{}\n", display_string(&u)))
        }
        Command::Encode { pattern } => {
            let pattern = MicronuclearPattern::parse(&inputs.next(pattern, "PATTERN")?)?;
            Outcome::ok(format!("{}\n", pattern.encode()))
        }
        Command::Apply { string, rules } => {
            let u = inputs.legal(string, "STRING")?;
            let reduction: Reduction = rules.parse()?;
            match reduction.apply(&u) {
                Ok(w) => Outcome::ok(format!("{}\n", display_string(&w))),
                Err(e @ Error::StepNotApplicable { .. }) => Outcome {
                    code: EXIT_NEGATIVE,
                    stdout: String::new(),
                    stderr: format!("{e}\n"),
                },
                Err(e) => return Err(e.into()),
            }
        }
        Command::Graph { string, remove, dot } => {
            let u = inputs.legal(string, "STRING")?;
            let g = ReductionGraph::build(&u, &ids(&remove)?)?;
            if dot {
                Outcome::ok(g.export_dot())
            } else {
                Outcome::ok(g.components().to_text(&g))
            }
        }
        Command::Reduct { string, remove } => {
            let u = inputs.legal(string, "STRING")?;
            let red = reduct_of(&u, &ids(&remove)?)?;
            Outcome::ok(format!("{}\n", display_string(&red)))
        }
        Command::Reducible {
            u,
            v,
            rules,
            witness,
            max_domain,
        } => {
            let u = inputs.legal(u, "U")?;
            let v = inputs.legal(v, "V")?;
            let rules = rule_set(&rules)?;
            let verdict = if witness {
                is_reducible_with_witness(&u, &v, rules, &SearchLimits { max_domain })
            } else {
                is_reducible(&u, &v, rules)
            };
            let mut text = format!(
                "{}\nreason: {}\n",
                if verdict.reducible { "reducible" } else { "not reducible" },
                verdict.reason
            );
            if witness && verdict.reducible {
                match &verdict.witness {
                    Some(r) if r.is_empty() => text.push_str("witness: (empty)\n"),
                    Some(r) => text.push_str(&format!("witness: {r}\n")),
                    None => text.push_str("witness: unavailable (domain exceeds search bound)\n"),
                }
            }
            Outcome::verdict(verdict.reducible, text)
        }
        Command::SnrCount { string, remove } => {
            let u = inputs.legal(string, "STRING")?;
            Outcome::ok(format!("{}\n", snr_count(&u, &ids(&remove)?)?))
        }
        Command::Successful { string, rules } => {
            let u = inputs.legal(string, "STRING")?;
            let yes = successful_in(&u, rule_set(&rules)?);
            Outcome::verdict(yes, if yes { "successful\n" } else { "not successful\n" })
        }
        Command::Enumerate {
            string,
            rules,
            limit,
            max_domain,
        } => {
            let u = inputs.legal(string, "STRING")?;
            let found = enumerate_successful_reductions(&u, rule_set(&rules)?, limit, &SearchLimits { max_domain })?;
            let mut text = String::new();
            for r in &found {
                if r.is_empty() {
                    text.push_str("(empty)\n");
                } else {
                    text.push_str(&format!("{r}\n"));
                }
            }
            Outcome::verdict(!found.is_empty(), text)
        }
        Command::Realizable { string, max_domain } => {
            let u = inputs.legal(string, "STRING")?;
            if let Some(pattern) = realistic_witness(&u) {
                Outcome::ok(format!("realistic\npattern: {pattern}\n"))
            } else {
                match realization(&u, max_domain)? {
                    Some(r) => {
                        let renaming: Vec<String> = r.renaming.iter().map(|(from, to)| format!("{from}->{to}")).collect();
                        Outcome::ok(format!(
                            "realizable\npattern: {}\nrenaming: {}\n",
                            r.pattern,
                            renaming.join(" ")
                        ))
                    }
                    None => Outcome::negative("not realizable\n"),
                }
            }
        }
    };
    Ok(out)
}

/// Strings print as space-separated integers; the empty string prints as λ.
fn display_string(s: &spr_core::PointerString) -> String {
    if s.is_empty() {
        "λ".to_string()
    } else {
        s.to_string()
    }
}
