//! Line protocol for external models: one prompt per line in, one
//! prediction per line out.

use std::io::{BufRead, BufReader, Write};
use std::process::{Child, Command, Stdio};
use std::sync::mpsc::{self, RecvTimeoutError};
use std::thread;
use std::time::Duration;

use super::{format_prompt, EvalError, Prediction};
use crate::datasets::DatasetRecord;

/// Runs `program args..`, feeding it the formatted prompt of every record and
/// pairing its output lines with the records in order. Each output line must
/// arrive within `timeout` of the previous one.
pub fn run_external_model(
    program: &str,
    args: &[String],
    records: &[DatasetRecord],
    timeout: Duration,
) -> Result<Vec<Prediction>, EvalError> {
    let mut child = Command::new(program)
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::null())
        .spawn()
        .map_err(|e| EvalError::Process(format!("cannot start {program:?}: {e}")))?;

    let prompts: Vec<String> =
        records.iter().map(|r| format_prompt(r.domain, &r.nl.replace(['\n', '\r'], " "))).collect();
    let mut stdin = child.stdin.take().expect("stdin is piped");
    // a model that stops reading only makes this thread fail its write
    thread::spawn(move || {
        for p in prompts {
            if writeln!(stdin, "{p}").is_err() {
                return;
            }
        }
        let _ = stdin.flush();
    });

    let stdout = child.stdout.take().expect("stdout is piped");
    let (tx, rx) = mpsc::channel();
    thread::spawn(move || {
        for line in BufReader::new(stdout).lines() {
            let stop = line.is_err();
            if tx.send(line).is_err() || stop {
                return;
            }
        }
    });

    let mut predictions = Vec::with_capacity(records.len());
    for (i, r) in records.iter().enumerate() {
        match rx.recv_timeout(timeout) {
            Ok(Ok(line)) => predictions.push(Prediction::new(&r.id, line.trim_end_matches('\r'))),
            Ok(Err(e)) => {
                kill(&mut child);
                return Err(EvalError::Process(format!("reading model output: {e}")));
            }
            Err(RecvTimeoutError::Timeout) => {
                kill(&mut child);
                return Err(EvalError::Timeout { line: i + 1, timeout });
            }
            Err(RecvTimeoutError::Disconnected) => {
                kill(&mut child);
                return Err(EvalError::LineCountMismatch { expected: records.len(), got: i });
            }
        }
    }

    // anything after the last expected line is a protocol error too
    let mut extra = 0;
    loop {
        match rx.recv_timeout(timeout) {
            Ok(Ok(_)) => extra += 1,
            Ok(Err(_)) | Err(RecvTimeoutError::Disconnected) => break,
            Err(RecvTimeoutError::Timeout) => {
                kill(&mut child);
                return Err(EvalError::Process("model did not exit after the last prompt".into()));
            }
        }
    }
    let status = child.wait().map_err(|e| EvalError::Process(format!("waiting for the model: {e}")))?;
    if extra > 0 {
        return Err(EvalError::LineCountMismatch { expected: records.len(), got: records.len() + extra });
    }
    if !status.success() {
        return Err(EvalError::Process(format!("model exited with {status}")));
    }
    Ok(predictions)
}

fn kill(child: &mut Child) {
    let _ = child.kill();
    let _ = child.wait();
}
