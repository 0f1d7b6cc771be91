package com.example.shop;

public class RegionPolicy {
    public int taxRate(Customer customer) {
        switch (customer.getRegion()) {
            case "EU":
                return 20;
            case "US":
                return 7;
            default:
                return 0;
        }
    }

    public boolean isAdult(Customer customer) {
        return customer.getAge() >= 18;
    }
}
