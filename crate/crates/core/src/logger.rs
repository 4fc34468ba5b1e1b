//! Leveled logger with a daily file sink.
//!
//! Records go to `<dir>/<app>-YYYY.MM.DD` (the OS temporary directory by
//! default), one line per record:
//!
//! ```text
//! 2026-10-15T09:12:44.120+00:00 WARN engine unknown procedure foo/1
//! ```
//!
//! Records at `warn` and above are mirrored to standard error. If the file
//! cannot be opened or written the logger keeps going on standard error only.

use std::fmt;
use std::fs::{File, OpenOptions};
use std::io::Write;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::sync::atomic::{AtomicU8, Ordering};
use std::sync::{Arc, Mutex};

use chrono::{DateTime, Local, NaiveDate};

/// Name prefix of the daily log file.
pub const APP_NAME: &str = "termbridge";

/// Environment variable read for the default level.
pub const LEVEL_ENV: &str = "TERMBRIDGE_LOG_LEVEL";

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[repr(u8)]
pub enum Level {
    Trace = 0,
    Debug = 1,
    Info = 2,
    Warn = 3,
    Error = 4,
}

impl Level {
    /// The matching slot of the host platform's logging levels.
    pub fn platform_name(self) -> &'static str {
        match self {
            Level::Trace => "FINEST",
            Level::Debug => "FINE",
            Level::Info => "INFO",
            Level::Warn => "WARNING",
            Level::Error => "SEVERE",
        }
    }

    fn from_u8(v: u8) -> Level {
        match v {
            0 => Level::Trace,
            1 => Level::Debug,
            2 => Level::Info,
            3 => Level::Warn,
            _ => Level::Error,
        }
    }
}

impl fmt::Display for Level {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Level::Trace => "TRACE",
            Level::Debug => "DEBUG",
            Level::Info => "INFO",
            Level::Warn => "WARN",
            Level::Error => "ERROR",
        })
    }
}

impl FromStr for Level {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "trace" | "finest" => Ok(Level::Trace),
            "debug" | "fine" => Ok(Level::Debug),
            "info" => Ok(Level::Info),
            "warn" | "warning" => Ok(Level::Warn),
            "error" | "severe" => Ok(Level::Error),
            other => Err(format!("unknown log level `{other}`")),
        }
    }
}

/// A single formatted log entry.
#[derive(Debug, Clone)]
pub struct LogRecord {
    pub level: Level,
    pub origin: String,
    pub message: String,
    pub cause: Option<String>,
    pub timestamp: DateTime<Local>,
}

impl LogRecord {
    /// Renders the record as it is written to the file sink.
    pub fn format(&self) -> String {
        let mut line = format!(
            "{} {} {} {}",
            self.timestamp.to_rfc3339_opts(chrono::SecondsFormat::Millis, false),
            self.level,
            self.origin,
            self.message
        );
        if let Some(cause) = &self.cause {
            for cause_line in cause.lines() {
                line.push_str("\n    caused by: ");
                line.push_str(cause_line);
            }
        }
        line
    }
}

/// File name for records written on `date`.
pub fn log_file_name(app: &str, date: NaiveDate) -> String {
    format!("{app}-{}", date.format("%Y.%m.%d"))
}

struct Sink {
    date: Option<NaiveDate>,
    file: Option<File>,
    broken: bool,
}

struct Inner {
    app: String,
    dir: PathBuf,
    level: AtomicU8,
    sink: Mutex<Sink>,
}

/// Thread-safe logger handle. Clones share the same sink and level.
#[derive(Clone)]
pub struct Logger {
    inner: Arc<Inner>,
}

impl fmt::Debug for Logger {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Logger")
            .field("app", &self.inner.app)
            .field("dir", &self.inner.dir)
            .field("level", &self.level())
            .finish()
    }
}

impl Default for Logger {
    fn default() -> Self {
        Logger::new(std::env::temp_dir())
    }
}

impl Logger {
    /// Logger writing into `dir`; the level comes from the environment
    /// (default `info`).
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        let level = std::env::var(LEVEL_ENV)
            .ok()
            .and_then(|v| v.parse().ok())
            .unwrap_or(Level::Info);
        Logger::with_level(dir, level)
    }

    pub fn with_level(dir: impl Into<PathBuf>, level: Level) -> Self {
        Logger {
            inner: Arc::new(Inner {
                app: APP_NAME.to_string(),
                dir: dir.into(),
                level: AtomicU8::new(level as u8),
                sink: Mutex::new(Sink {
                    date: None,
                    file: None,
                    broken: false,
                }),
            }),
        }
    }

    pub fn level(&self) -> Level {
        Level::from_u8(self.inner.level.load(Ordering::Relaxed))
    }

    pub fn set_level(&self, level: Level) {
        self.inner.level.store(level as u8, Ordering::Relaxed);
    }

    pub fn enabled(&self, level: Level) -> bool {
        level >= self.level()
    }

    pub fn dir(&self) -> &Path {
        &self.inner.dir
    }

    /// Path of today's log file.
    pub fn current_file(&self) -> PathBuf {
        self.inner
            .dir
            .join(log_file_name(&self.inner.app, Local::now().date_naive()))
    }

    pub fn log(
        &self,
        level: Level,
        origin: impl fmt::Display,
        message: impl fmt::Display,
        cause: Option<&dyn std::error::Error>,
    ) {
        if !self.enabled(level) {
            return;
        }
        let record = LogRecord {
            level,
            origin: origin.to_string(),
            message: message.to_string(),
            cause: cause.map(|c| c.to_string()),
            timestamp: Local::now(),
        };
        self.write(&record);
    }

    pub fn trace(&self, origin: impl fmt::Display, message: impl fmt::Display) {
        self.log(Level::Trace, origin, message, None);
    }

    pub fn debug(&self, origin: impl fmt::Display, message: impl fmt::Display) {
        self.log(Level::Debug, origin, message, None);
    }

    pub fn info(&self, origin: impl fmt::Display, message: impl fmt::Display) {
        self.log(Level::Info, origin, message, None);
    }

    pub fn warn(&self, origin: impl fmt::Display, message: impl fmt::Display) {
        self.log(Level::Warn, origin, message, None);
    }

    pub fn error(
        &self,
        origin: impl fmt::Display,
        message: impl fmt::Display,
        cause: Option<&dyn std::error::Error>,
    ) {
        self.log(Level::Error, origin, message, cause);
    }

    fn write(&self, record: &LogRecord) {
        let line = record.format();
        // One lock per record keeps lines from interleaving.
        let mut sink = match self.inner.sink.lock() {
            Ok(guard) => guard,
            Err(poisoned) => poisoned.into_inner(),
        };
        if record.level >= Level::Warn {
            eprintln!("{line}");
        }
        let today = record.timestamp.date_naive();
        if sink.date != Some(today) {
            sink.date = Some(today);
            sink.broken = false;
            let path = self.inner.dir.join(log_file_name(&self.inner.app, today));
            sink.file = OpenOptions::new().create(true).append(true).open(path).ok();
        }
        if sink.broken {
            return;
        }
        let written = match sink.file.as_mut() {
            Some(file) => writeln!(file, "{line}").is_ok(),
            None => false,
        };
        if !written {
            sink.broken = true;
            sink.file = None;
            if record.level < Level::Warn {
                eprintln!("{line}");
            }
        }
    }
}
