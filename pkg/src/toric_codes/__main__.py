from toric_codes.cli import main

raise SystemExit(main())
