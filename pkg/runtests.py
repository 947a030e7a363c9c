#!/usr/bin/env python
import argparse
import os
import sys

import django
from django.conf import settings
from django.test.utils import get_runner


def run(labels):
    os.environ.setdefault('DJANGO_SETTINGS_MODULE', 'tests.settings')
    django.setup()
    runner = get_runner(settings)()
    return runner.run_tests(labels or ['tests'])


def parse_args(argv):
    parser = argparse.ArgumentParser(description='Run the unravel test suite.')
    parser.add_argument('labels', nargs='*')
    parser.add_argument('--seed', type=int, help='override the seed of every randomised test')
    parser.add_argument('--benchmark', action='store_true', help='also run the million-agent timing tests')
    return parser.parse_args(argv)


if __name__ == '__main__':
    options = parse_args(sys.argv[1:])
    if options.seed is not None:
        os.environ['UNRAVEL_TEST_SEED'] = str(options.seed)
    if options.benchmark:
        os.environ['UNRAVEL_BENCHMARK'] = '1'
    sys.exit(bool(run(options.labels)))
