"""
Console entry point: ``rbloss <verb> [options]`` runs the ``rbloss_<verb>``
management command with the project settings.
"""
import os
import sys

VERBS = ('list', 'curve', 'eval', 'verify', 'build', 'gen', 'fit', 'risk', 'metric')


def main(argv=None):
    argv = list(sys.argv if argv is None else argv)
    os.environ.setdefault('DJANGO_SETTINGS_MODULE', 'backend.settings')
    from django.core.management import execute_from_command_line

    if len(argv) < 2 or argv[1] in ('-h', '--help'):
        sys.stdout.write(f"usage: rbloss <{'|'.join(VERBS)}> [options]\n")
        return 0 if len(argv) >= 2 else 2
    verb = argv[1]
    if verb not in VERBS:
        sys.stderr.write(f"rbloss: unknown command {verb!r}; expected one of {', '.join(VERBS)}\n")
        return 2
    execute_from_command_line(['rbloss', f"rbloss_{verb}"] + argv[2:])
    return 0


if __name__ == '__main__':
    sys.exit(main())
