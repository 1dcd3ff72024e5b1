import argparse
import logging
import sys
from typing import List, Optional

from config import Config
from bench.errors import ConfigError, DatasetError, OutputError
from bench.run_config import RunConfig, load_config_file, parse_detector_list
from bench.runner import run_batch
from bench.samples import write_samples
from bench.tables import write_tables
from detectors.registry import DETECTOR_NAMES, default_settings

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_BATCH_FAILURE = 1
EXIT_CONFIG_ERROR = 2


def setup_logging():
    """Console logging, plus a log file when LOG_FILE is set"""
    handlers = [logging.StreamHandler()]
    if Config.LOG_FILE:
        handlers.append(logging.FileHandler(Config.LOG_FILE))

    logging.basicConfig(
        level=getattr(logging, Config.LOG_LEVEL.upper(), logging.INFO),
        format='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
        handlers=handlers,
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog='mammoedge', description="Edge detection benchmark for PGM mammograms")
    commands = parser.add_subparsers(dest='command', required=True)

    detect = commands.add_parser('detect', help="Run detectors over a directory of PGM images")
    detect.add_argument('--input', '-i', required=True, help="Directory containing .pgm images")
    detect.add_argument('--output', '-o', default=Config.DEFAULT_OUTPUT_DIR, help="Output directory")
    detect.add_argument('--detectors', '-d', required=True,
                        help=f"Comma-separated list from {', '.join(DETECTOR_NAMES)}, or 'all'")
    detect.add_argument('--config', '-c', default=Config.DEFAULT_RUN_CONFIG or None,
                        help="Run config file of dotted key = value lines")
    detect.add_argument('--filter', '-f', default=None, help="Glob on image file names, e.g. 'mdb0*'")
    detect.add_argument('--jobs', '-j', type=int, default=Config.DEFAULT_JOBS, help="Worker threads")
    detect.add_argument('--tables', action='store_true', help="Also write tables.md")

    samples = commands.add_parser('samples', help="Write the synthetic sample corpus")
    samples.add_argument('--output', '-o', default='data/samples', help="Output directory")
    samples.add_argument('--count', type=int, default=5)
    samples.add_argument('--size', type=int, default=128)

    return parser


def run_detect(args) -> int:
    try:
        if args.config:
            settings, denominator = load_config_file(args.config)
        else:
            settings, denominator = default_settings(), None

        config = RunConfig(
            input_dir=args.input,
            output_dir=args.output,
            detectors=parse_detector_list(args.detectors),
            settings=settings,
            image_filter=args.filter,
            parallelism=args.jobs,
            denominator=denominator,
            write_tables=args.tables,
        )
        config.build_detectors()
    except ConfigError as e:
        logger.error(f"Configuration error: {e}")
        return EXIT_CONFIG_ERROR

    try:
        summary = run_batch(config)
        if config.write_tables and summary.reports:
            write_tables(summary, config.output_dir)
    except (DatasetError, OutputError) as e:
        logger.error(f"Batch failed: {e}")
        return EXIT_BATCH_FAILURE
    except Exception as e:
        logger.exception(f"Unexpected batch failure: {e}")
        return EXIT_BATCH_FAILURE

    return EXIT_OK


def run_samples(args) -> int:
    if args.count < 1 or args.size < 8:
        logger.error("samples needs --count >= 1 and --size >= 8")
        return EXIT_CONFIG_ERROR
    try:
        write_samples(args.output, args.count, args.size)
    except OSError as e:
        logger.error(f"Cannot write samples: {e}")
        return EXIT_BATCH_FAILURE
    return EXIT_OK


def main(argv: Optional[List[str]] = None) -> int:
    """Main entry point"""
    try:
        Config.validate()
    except ValueError as e:
        print(f"{e}", file=sys.stderr)
        return EXIT_CONFIG_ERROR

    setup_logging()
    args = build_parser().parse_args(argv)

    if args.command == 'detect':
        return run_detect(args)
    return run_samples(args)


if __name__ == '__main__':
    exit(main())
