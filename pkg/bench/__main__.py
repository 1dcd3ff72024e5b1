from bench.cli import main

exit(main())
