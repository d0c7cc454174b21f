use clap::Parser;
use fincohom_cli::error::CliError;
use fincohom_cli::{render, run, write_output, Cli};

fn fail(e: &CliError) -> ! {
    let report = serde_json::to_string_pretty(&e.report()).expect("error report serializes");
    eprintln!("{report}");
    std::process::exit(e.exit_code());
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) if !e.use_stderr() => e.exit(),
        Err(e) => {
            let _ = e.print();
            fail(&CliError::Usage(e.kind().to_string()));
        }
    };
    let out = run(&cli).unwrap_or_else(|e| fail(&e));
    let text = render(&out, cli.common.format);
    if let Err(e) = write_output(cli.common.out.as_deref(), &text) {
        fail(&CliError::Io {
            path: cli.common.out.map(|p| p.display().to_string()).unwrap_or_else(|| "<stdout>".into()),
            message: e.to_string(),
        });
    }
}
